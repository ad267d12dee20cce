"""Proposition systems: subsets of a sample space or subspaces of a Hilbert space.

Both realizations share one interface.  Classical propositions carry a frozen
index set; quantum propositions carry an orthonormal frame whose projector is
the canonical representative (frames are basis dependent, projectors are not).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .errors import (
    BadGranularity,
    BadGranularityVector,
    BadDecomposition,
    ModelMismatch,
    NotContained,
    NotJointlyDecidable,
    NotOrthogonal,
)
from .models import TOL, Kind, Model, as_rng

# Eigenvalue gap used to cluster degenerate eigenvalues during simultaneous
# diagonalization of commuting projectors.
EIGEN_GAP = 1e-7

# Exhaustive classical enumeration is limited to sample spaces of this size.
ENUMERATION_CAP = 8


@dataclass(frozen=True, eq=False)
class Proposition:
    model: Model
    payload: object  # frozenset[int] (classical) or read-only ndarray frame (quantum)

    def __post_init__(self):
        self.model.require_constructible()
        if self.model.kind is Kind.CLASSICAL:
            idx = frozenset(int(i) for i in self.payload)
            if any(i < 0 or i >= self.model.d for i in idx):
                raise ValueError(f"index out of range for {self.model}")
            object.__setattr__(self, "payload", idx)
        else:
            frame = np.array(self.payload, dtype=self.model.dtype).reshape(self.model.d, -1)
            gram = frame.conj().T @ frame
            if frame.shape[1] and linalg.max_abs(gram - np.eye(frame.shape[1])) > TOL:
                raise ValueError("frame columns are not orthonormal")
            frame.setflags(write=False)
            object.__setattr__(self, "payload", frame)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_indices(cls, model: Model, indices) -> "Proposition":
        return cls(model, frozenset(indices))

    @classmethod
    def span(cls, model: Model, vectors) -> "Proposition":
        """Subspace spanned by the given column vectors (need not be orthonormal)."""
        v = np.array(vectors, dtype=model.dtype).reshape(model.d, -1)
        return cls(model, linalg.span_basis(v))

    @classmethod
    def ray(cls, model: Model, vector) -> "Proposition":
        v = np.asarray(vector, dtype=model.dtype).reshape(model.d, 1)
        return cls(model, v / np.linalg.norm(v))

    @classmethod
    def basis_ray(cls, model: Model, j: int) -> "Proposition":
        if model.kind is Kind.CLASSICAL:
            return cls(model, frozenset([j]))
        return cls(model, np.eye(model.d, dtype=model.dtype)[:, [j]])

    @classmethod
    def top(cls, model: Model) -> "Proposition":
        if model.kind is Kind.CLASSICAL:
            return cls(model, frozenset(range(model.d)))
        return cls(model, np.eye(model.d, dtype=model.dtype))

    @classmethod
    def empty(cls, model: Model) -> "Proposition":
        if model.kind is Kind.CLASSICAL:
            return cls(model, frozenset())
        return cls(model, np.zeros((model.d, 0), dtype=model.dtype))

    # -- derived views ------------------------------------------------------

    @property
    def is_classical(self) -> bool:
        return self.model.kind is Kind.CLASSICAL

    @property
    def indices(self) -> frozenset:
        if not self.is_classical:
            raise TypeError("indices are only defined for classical propositions")
        return self.payload

    @property
    def frame(self) -> np.ndarray:
        if self.is_classical:
            return np.eye(self.model.d)[:, sorted(self.payload)]
        return self.payload

    @property
    def projector(self) -> np.ndarray:
        """P_x; for classical propositions the diagonal indicator matrix."""
        if self.is_classical:
            diag = np.zeros(self.model.d)
            diag[list(self.payload)] = 1.0
            return np.diag(diag)
        return linalg.projector(self.payload)

    @property
    def granularity(self) -> int:
        if self.is_classical:
            return len(self.payload)
        return self.payload.shape[1]

    def __eq__(self, other):
        if not isinstance(other, Proposition) or other.model != self.model:
            return NotImplemented
        if self.is_classical:
            return self.payload == other.payload
        return linalg.max_abs(self.projector - other.projector) <= TOL

    __hash__ = None

    def __repr__(self):
        if self.is_classical:
            return f"Proposition({self.model}, {sorted(self.payload)})"
        return f"Proposition({self.model}, rank={self.granularity})"


def _same_model(*props: Proposition) -> Model:
    model = props[0].model
    for p in props[1:]:
        if p.model != model:
            raise ModelMismatch(f"{p.model} vs {model}")
    return model


def granularity(x: Proposition) -> int:
    return x.granularity


def are_orthogonal(x: Proposition, y: Proposition) -> bool:
    _same_model(x, y)
    if x.is_classical:
        return not (x.payload & y.payload)
    if x.granularity == 0 or y.granularity == 0:
        return True
    return linalg.max_abs(x.projector @ y.projector) <= TOL


def partial_sum(x: Proposition, y: Proposition) -> Proposition:
    """x ⊕ y, defined only for mutually exclusive summands."""
    model = _same_model(x, y)
    if not are_orthogonal(x, y):
        raise NotOrthogonal("summands are not mutually exclusive")
    if x.is_classical:
        return Proposition(model, x.payload | y.payload)
    frame = np.hstack([x.payload, y.payload])
    if frame.shape[1]:
        q, _ = np.linalg.qr(frame)
        frame = q
    return Proposition(model, frame)


def direct_sum(parts: Sequence[Proposition]) -> Proposition:
    if not parts:
        raise ValueError("need at least one summand")
    out = parts[0]
    for p in parts[1:]:
        out = partial_sum(out, p)
    return out


def implies(x: Proposition, a: Proposition) -> bool:
    """x ⊆ a."""
    _same_model(x, a)
    if x.is_classical:
        return x.payload <= a.payload
    px = x.projector
    return linalg.max_abs(a.projector @ px - px) <= TOL


def relative_complement(a: Proposition, x: Proposition) -> Proposition:
    """The unique y with x ⊕ y = a."""
    model = _same_model(a, x)
    if not implies(x, a):
        raise NotContained("x is not a refinement of a")
    if a.is_classical:
        return Proposition(model, a.payload - x.payload)
    frame = linalg.range_of_projector(a.projector - x.projector)
    return Proposition(model, frame)


def complement(x: Proposition) -> Proposition:
    return relative_complement(Proposition.top(x.model), x)


# -- sampling and enumeration ------------------------------------------------


def sample_refinement(a: Proposition, k: int, seed) -> Proposition:
    """Uniformly random granularity-k refinement of ``a`` (Haar for quantum)."""
    if not 1 <= k <= a.granularity:
        raise BadGranularity(f"k={k} outside [1, {a.granularity}]")
    rng = as_rng(seed)
    if a.is_classical:
        pick = rng.choice(sorted(a.payload), size=k, replace=False)
        return Proposition(a.model, frozenset(int(i) for i in pick))
    real = a.model.kind is Kind.QUANTUM_REAL
    inner = linalg.haar_frame(rng, a.granularity, k, real=real)
    return Proposition(a.model, a.payload @ inner)


@dataclass(frozen=True)
class Decomposition:
    """An ordered MECE decomposition (x_1, ..., x_r) of ``parent``."""

    parent: Proposition
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise BadDecomposition("a decomposition needs at least one part")
        _same_model(self.parent, *parts)
        for p in parts:
            if p.granularity < 1:
                raise BadDecomposition("parts must be non-absurd")
        for p, q in itertools.combinations(parts, 2):
            if not are_orthogonal(p, q):
                raise BadDecomposition("parts are not mutually exclusive")
        if direct_sum(list(parts)) != self.parent:
            raise BadDecomposition("parts do not sum to the parent")

    @property
    def granularity_vector(self) -> tuple:
        return tuple(p.granularity for p in self.parts)

    @property
    def model(self) -> Model:
        return self.parent.model

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


def _check_vector(a: Proposition, granularity_vector) -> tuple:
    kvec = tuple(int(k) for k in granularity_vector)
    if not kvec or any(k < 1 for k in kvec) or sum(kvec) != a.granularity:
        raise BadGranularityVector(f"{kvec} is not a composition of {a.granularity}")
    return kvec


def sample_decomposition(a: Proposition, granularity_vector, seed) -> Decomposition:
    kvec = _check_vector(a, granularity_vector)
    rng = as_rng(seed)
    cuts = np.cumsum((0,) + kvec)
    if a.is_classical:
        order = rng.permutation(sorted(a.payload))
        parts = [Proposition(a.model, frozenset(int(i) for i in order[s:e]))
                 for s, e in zip(cuts[:-1], cuts[1:])]
    else:
        real = a.model.kind is Kind.QUANTUM_REAL
        flag = a.payload @ linalg.haar_unitary(rng, a.granularity, real=real)
        parts = [Proposition(a.model, flag[:, s:e]) for s, e in zip(cuts[:-1], cuts[1:])]
    return Decomposition(a, tuple(parts))


def enumerate_decompositions(a: Proposition, granularity_vector) -> Iterator[Decomposition]:
    """All ordered classical decompositions with the given granularity vector."""
    if not a.is_classical:
        raise TypeError("exact enumeration is only available for classical propositions")
    if a.granularity > ENUMERATION_CAP:
        raise ValueError(f"enumeration capped at d <= {ENUMERATION_CAP}")
    kvec = _check_vector(a, granularity_vector)

    def rec(remaining, ks):
        if not ks:
            yield ()
            return
        for chosen in itertools.combinations(sorted(remaining), ks[0]):
            for rest in rec(remaining - set(chosen), ks[1:]):
                yield (frozenset(chosen),) + rest

    for parts in rec(set(a.payload), kvec):
        yield Decomposition(a, tuple(Proposition(a.model, p) for p in parts))


def maximal_decompositions(a: Proposition) -> list[frozenset]:
    """Unordered maximal classical decompositions (the collection A_a)."""
    seen = {frozenset(p.payload for p in m)
            for m in enumerate_decompositions(a, (1,) * a.granularity)}
    return sorted(seen, key=lambda s: sorted(sorted(p) for p in s))


def compositions(d: int) -> Iterator[tuple]:
    """All granularity vectors (ordered compositions) of ``d``."""
    if d == 0:
        yield ()
        return
    for first in range(1, d + 1):
        for rest in compositions(d - first):
            yield (first,) + rest


# -- joint decidability and the Boolean layer --------------------------------


def jointly_decidable(x: Proposition, y: Proposition) -> bool:
    _same_model(x, y)
    if x.is_classical:
        return True
    px, py = x.projector, y.projector
    return linalg.max_abs(px @ py - py @ px) <= TOL


def joint_refinement(x: Proposition, y: Proposition) -> dict[tuple[bool, bool], Proposition]:
    """Common refining decomposition of a jointly decidable pair.

    Keys are (inside x, inside y) membership flags; the four atoms are mutually
    exclusive and sum to the top proposition.  Quantum atoms come from the
    eigenspaces of P_x + 2 P_y, which is simultaneous diagonalization of the pair.
    """
    model = _same_model(x, y)
    if not jointly_decidable(x, y):
        raise NotJointlyDecidable("propositions do not commute")
    if x.is_classical:
        universe = frozenset(range(model.d))
        sets = {
            (True, True): x.payload & y.payload,
            (True, False): x.payload - y.payload,
            (False, True): y.payload - x.payload,
            (False, False): universe - x.payload - y.payload,
        }
        return {k: Proposition(model, v) for k, v in sets.items()}
    h = x.projector + 2 * y.projector
    frames = {k: np.zeros((model.d, 0), dtype=model.dtype)
              for k in [(True, True), (True, False), (False, True), (False, False)]}
    for value, vecs in linalg.eigenspaces(h, EIGEN_GAP):
        label = int(round(value))
        key = (bool(label & 1), bool(label & 2))
        frames[key] = np.hstack([frames[key], vecs.astype(model.dtype)])
    return {k: Proposition(model, f) for k, f in frames.items()}


def meet(x: Proposition, y: Proposition) -> Proposition:
    return joint_refinement(x, y)[(True, True)]


def join(x: Proposition, y: Proposition) -> Proposition:
    atoms = joint_refinement(x, y)
    return direct_sum([atoms[(True, True)], atoms[(True, False)], atoms[(False, True)]])
