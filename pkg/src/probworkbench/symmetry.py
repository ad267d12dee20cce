"""Symmetry groups with their actions and transporters, plus the dimension formulas.

Group metric convention: the distance of exp(K) from the identity is the
Frobenius norm of the anti-self-adjoint generator K.  This metric is
bi-invariant; any other invariant metric differs by an overall scale, so
scale-dependent quantities are only ever compared as ratios.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import expm, logm

from . import linalg
from .errors import GranularityMismatch, ModelMismatch, UnsupportedModel
from .models import Kind, Model, as_rng
from .propositions import (
    Decomposition,
    Proposition,
    are_orthogonal,
    complement,
    compositions,
    partial_sum,
)
from .states import State

# Survival of a ray moved along a unit-speed horizontal geodesic for metric
# length t is cos^2(METRIC_C * t); 1/sqrt(2) under the Frobenius convention.
METRIC_C = 1 / np.sqrt(2)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A permutation (classical) or orthogonal/unitary matrix (quantum)."""

    model: Model
    payload: object

    def __post_init__(self):
        self.model.require_constructible()
        d = self.model.d
        if self.model.kind is Kind.CLASSICAL:
            perm = tuple(int(i) for i in self.payload)
            if sorted(perm) != list(range(d)):
                raise ValueError(f"{perm} is not a permutation of range({d})")
            object.__setattr__(self, "payload", perm)
        else:
            u = np.array(self.payload, dtype=self.model.dtype).reshape(d, d)
            if not linalg.is_unitary(u):
                raise ValueError("matrix is not unitary")
            u.setflags(write=False)
            object.__setattr__(self, "payload", u)

    @classmethod
    def identity(cls, model: Model) -> "GroupElement":
        if model.kind is Kind.CLASSICAL:
            return cls(model, tuple(range(model.d)))
        return cls(model, np.eye(model.d, dtype=model.dtype))

    @property
    def matrix(self) -> np.ndarray:
        """Permutation matrix or the unitary itself; maps basis j to image j."""
        if self.model.kind is Kind.CLASSICAL:
            m = np.zeros((self.model.d,) * 2)
            m[list(self.payload), range(self.model.d)] = 1.0
            return m
        return self.payload

    def act(self, x: Proposition) -> Proposition:
        if x.model != self.model:
            raise ModelMismatch(f"{x.model} vs {self.model}")
        if self.model.kind is Kind.CLASSICAL:
            return Proposition(self.model, frozenset(self.payload[i] for i in x.payload))
        return Proposition(self.model, self.payload @ x.payload)

    def act_state(self, rho: State) -> State:
        if rho.model != self.model:
            raise ModelMismatch(f"{rho.model} vs {self.model}")
        if self.model.kind is Kind.CLASSICAL:
            w = np.zeros(self.model.d)
            w[list(self.payload)] = rho.payload
            return State(self.model, w)
        u = self.payload
        return State(self.model, u @ rho.payload @ u.conj().T)

    def __call__(self, obj):
        if isinstance(obj, State):
            return self.act_state(obj)
        return self.act(obj)

    def compose(self, other: "GroupElement") -> "GroupElement":
        """self ∘ other (apply ``other`` first)."""
        if self.model.kind is Kind.CLASSICAL:
            return GroupElement(self.model, tuple(self.payload[i] for i in other.payload))
        return GroupElement(self.model, self.payload @ other.payload)

    def inverse(self) -> "GroupElement":
        if self.model.kind is Kind.CLASSICAL:
            inv = [0] * self.model.d
            for i, j in enumerate(self.payload):
                inv[j] = i
            return GroupElement(self.model, tuple(inv))
        return GroupElement(self.model, self.payload.conj().T)

    def distance_from_identity(self) -> float:
        """Frobenius norm of the principal logarithm (quantum only)."""
        if self.model.kind is Kind.CLASSICAL:
            raise UnsupportedModel("finite groups carry no metric")
        return float(np.linalg.norm(logm(self.payload), "fro"))


def random_group_element(model: Model, seed) -> GroupElement:
    """Uniform permutation or Haar-random orthogonal/unitary matrix."""
    if not model.kind.constructible:
        raise UnsupportedModel("no matrix representation for quaternionic models")
    rng = as_rng(seed)
    if model.kind is Kind.CLASSICAL:
        return GroupElement(model, tuple(int(i) for i in rng.permutation(model.d)))
    return GroupElement(model, linalg.haar_unitary(rng, model.d, real=model.kind is Kind.QUANTUM_REAL))


def random_generator(model: Model, rng: np.random.Generator) -> np.ndarray:
    """Random anti-self-adjoint matrix of unit Frobenius norm."""
    real = model.kind is Kind.QUANTUM_REAL
    g = linalg.gaussian_matrix(rng, model.d, model.d, real)
    k = (g - g.conj().T) / 2
    return k / np.linalg.norm(k, "fro")


def exp_generator(model: Model, generator: np.ndarray) -> GroupElement:
    u = expm(np.asarray(generator, dtype=model.dtype))
    return GroupElement(model, u)


def element_near_identity(model: Model, radius: float, seed) -> GroupElement:
    """exp(K) for a random generator K with Frobenius norm exactly ``radius``."""
    if not model.kind.is_quantum:
        raise UnsupportedModel("balls around the identity need a continuous group")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius == 0:
        return GroupElement.identity(model)
    return exp_generator(model, radius * random_generator(model, as_rng(seed)))


def find_transporter(m1: Decomposition, m2: Decomposition) -> GroupElement:
    """A group element mapping each part of ``m1`` onto the matching part of ``m2``."""
    if m1.model != m2.model:
        raise ModelMismatch(f"{m1.model} vs {m2.model}")
    if m1.granularity_vector != m2.granularity_vector:
        raise GranularityMismatch(f"{m1.granularity_vector} vs {m2.granularity_vector}")
    model = m1.model
    # Complete both decompositions to the full space before mapping basis to basis.
    src = list(m1.parts)
    dst = list(m2.parts)
    rest1, rest2 = complement(m1.parent), complement(m2.parent)
    if rest1.granularity:
        src.append(rest1)
        dst.append(rest2)
    if model.kind is Kind.CLASSICAL:
        perm = [0] * model.d
        for x, y in zip(src, dst):
            for i, j in zip(sorted(x.payload), sorted(y.payload)):
                perm[i] = j
        return GroupElement(model, tuple(perm))
    b1 = np.hstack([p.payload for p in src])
    b2 = np.hstack([p.payload for p in dst])
    return GroupElement(model, b2 @ b1.conj().T)


def stabilizer_check(g: GroupElement, a: Proposition, probes: Sequence[Proposition]) -> bool:
    """Whether g(a ⊕ x) = a ⊕ x for x = ∅ and every probe orthogonal to ``a``."""
    if g.act(a) != a:
        return False
    for x in probes:
        if are_orthogonal(a, x):
            ax = partial_sum(a, x)
            if g.act(ax) != ax:
                return False
    return True


# -- dimension formulas -------------------------------------------------------


def _kind(kind) -> Kind:
    return Kind(kind)


def dim_group(kind, d: int) -> int:
    """Manifold dimension of the symmetry group at granularity ``d``."""
    kind = _kind(kind)
    if d < 0:
        raise ValueError("d must be nonnegative")
    return {
        Kind.CLASSICAL: 0,
        Kind.QUANTUM_COMPLEX: d * d,
        Kind.QUANTUM_REAL: d * (d - 1) // 2,
        Kind.QUATERNIONIC: d * (2 * d + 1),
    }[kind]


GROUP_VARIANTS = {
    "U(d)": lambda d: d * d,
    "O(d)xO(d)": lambda d: d * (d - 1),
}


def dim_group_variant(name: str, d: int) -> int:
    """Dimension of the two continuous candidates left by the smoothness argument."""
    return GROUP_VARIANTS[name](d)


def mu_prime_symmetric(d: int) -> int:
    """Size of the largest independent generating subset of S_d."""
    if d < 1:
        raise ValueError("d must be positive")
    return d - 1


def dim_most_accurate(kind, d: int) -> int:
    """dim X(d): manifold dimension of the most accurate propositions."""
    kind = _kind(kind)
    if d < 0:
        raise ValueError("d must be nonnegative")
    if d == 0:
        return 0
    per_step = {Kind.CLASSICAL: 0, Kind.QUANTUM_COMPLEX: 2, Kind.QUANTUM_REAL: 1, Kind.QUATERNIONIC: 4}
    return per_step[kind] * (d - 1)


def dim_decomposition_manifold(kind, granularity_vector: Sequence[int]) -> int:
    """dim M({k_i}) for the collection of decompositions with granularities k_i."""
    kind = _kind(kind)
    ks = [int(k) for k in granularity_vector]
    if any(k < 1 for k in ks):
        raise ValueError("granularities must be positive")
    cross = sum(ks[i] * ks[j] for i in range(len(ks)) for j in range(i + 1, len(ks)))
    weight = {Kind.CLASSICAL: 0, Kind.QUANTUM_COMPLEX: 2, Kind.QUANTUM_REAL: 1, Kind.QUATERNIONIC: 4}
    return weight[kind] * cross


def state_parameter_count(kind, d: int) -> int:
    """S(d): real parameters fixing an unnormalized state at granularity ``d``."""
    kind = _kind(kind)
    if d < 0:
        raise ValueError("d must be nonnegative")
    return {
        Kind.CLASSICAL: d,
        Kind.QUANTUM_COMPLEX: d * d,
        Kind.QUANTUM_REAL: d * (d + 1) // 2,
        Kind.QUATERNIONIC: d * (2 * d - 1),
    }[kind]


@dataclass
class DimensionTable:
    kind: Kind
    d_max: int
    dim_group: dict = field(default_factory=dict)
    dim_most_accurate: dict = field(default_factory=dict)
    state_parameters: dict = field(default_factory=dict)
    dim_decomposition: dict = field(default_factory=dict)
    mu_prime: dict = field(default_factory=dict)

    def inconsistencies(self) -> list[str]:
        """Violations of the homogeneous-space and parameter-counting identities."""
        bad = []
        for kvec, dim_m in self.dim_decomposition.items():
            d = sum(kvec)
            s_lhs = self.state_parameters[d]
            s_rhs = dim_m + sum(self.state_parameters[k] for k in kvec)
            if s_lhs != s_rhs:
                bad.append(f"parameter rule {kvec}: {s_lhs} != {s_rhs}")
            g_rhs = self.dim_group[d] - sum(self.dim_group[k] for k in kvec)
            if self.kind is not Kind.CLASSICAL and g_rhs != dim_m:
                bad.append(f"homogeneous space {kvec}: {g_rhs} != {dim_m}")
        for d in range(1, self.d_max + 1):
            for l in range(1, d + 1):
                lhs = self.dim_most_accurate[d]
                rhs = self.dim_most_accurate[d - l + 1] + self.dim_most_accurate[l]
                if lhs != rhs:
                    bad.append(f"dim X recursion d={d}, l={l}: {lhs} != {rhs}")
        return bad


def dimension_table(kind, d_max: int = 8) -> DimensionTable:
    kind = _kind(kind)
    t = DimensionTable(kind, d_max)
    for d in range(0, d_max + 1):
        t.dim_group[d] = dim_group(kind, d)
        t.dim_most_accurate[d] = dim_most_accurate(kind, d)
        t.state_parameters[d] = state_parameter_count(kind, d)
        if d >= 1:
            if kind is Kind.CLASSICAL:
                t.mu_prime[d] = mu_prime_symmetric(d)
            for kvec in compositions(d):
                t.dim_decomposition[kvec] = dim_decomposition_manifold(kind, kvec)
    return t
