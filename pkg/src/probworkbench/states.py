"""States and probabilities, with conditioning, mixing and the preparation channel."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .errors import (
    BadDecomposition,
    InvalidState,
    ModelMismatch,
    OrthogonalPrior,
    WeightOutOfRange,
    ZeroProbabilityCondition,
    ZeroState,
)
from .models import TOL, Kind, Model, as_rng
from .propositions import Decomposition, Proposition, are_orthogonal

# Slack for classical weights; quantum states use TOL.
CLASSICAL_SLACK = 1e-12
MIN_CONDITION = 1e-12


@dataclass(frozen=True, eq=False)
class State:
    """A possibly subnormalized state: weight vector or density operator."""

    model: Model
    payload: np.ndarray

    def __post_init__(self):
        self.model.require_constructible()
        d = self.model.d
        if self.model.kind is Kind.CLASSICAL:
            w = np.array(self.payload, dtype=float).reshape(d)
            if np.any(w < -CLASSICAL_SLACK) or w.sum() > 1 + CLASSICAL_SLACK:
                raise InvalidState(f"weights {w} are not a subnormalized distribution")
            w = np.clip(w, 0.0, None)
            w.setflags(write=False)
            object.__setattr__(self, "payload", w)
            return
        rho = np.array(self.payload, dtype=self.model.dtype).reshape(d, d)
        if linalg.max_abs(rho - rho.conj().T) > TOL:
            raise InvalidState("density operator is not self-adjoint")
        rho = (rho + rho.conj().T) / 2
        eig = np.linalg.eigvalsh(rho)
        if eig[0] < -TOL:
            raise InvalidState(f"negative eigenvalue {eig[0]:.3g}")
        if np.real(np.trace(rho)) > 1 + TOL:
            raise InvalidState("trace exceeds one")
        rho.setflags(write=False)
        object.__setattr__(self, "payload", rho)

    @classmethod
    def from_weights(cls, model: Model, weights) -> "State":
        return cls(model, np.asarray(weights, dtype=float))

    @classmethod
    def pure(cls, e: Proposition, weight: float = 1.0) -> "State":
        """The state that assigns certainty to the most accurate proposition ``e``."""
        if e.granularity != 1:
            raise ValueError("pure states are built from most accurate propositions")
        if e.is_classical:
            w = np.zeros(e.model.d)
            w[next(iter(e.payload))] = weight
            return cls(e.model, w)
        return cls(e.model, weight * e.projector)

    @classmethod
    def maximally_mixed(cls, model: Model) -> "State":
        if model.kind is Kind.CLASSICAL:
            return cls(model, np.full(model.d, 1.0 / model.d))
        return cls(model, np.eye(model.d, dtype=model.dtype) / model.d)

    @property
    def is_classical(self) -> bool:
        return self.model.kind is Kind.CLASSICAL

    @property
    def matrix(self) -> np.ndarray:
        """Density operator view; diagonal for classical states."""
        if self.is_classical:
            return np.diag(self.payload)
        return self.payload

    @property
    def trace(self) -> float:
        if self.is_classical:
            return float(self.payload.sum())
        return float(np.real(np.trace(self.payload)))

    def normalized(self) -> "State":
        t = self.trace
        if t <= MIN_CONDITION:
            raise ZeroState("state has zero total weight")
        return State(self.model, self.payload / t)

    def __repr__(self):
        return f"State({self.model}, trace={self.trace:.6g})"


def _check(rho: State, x: Proposition):
    if rho.model != x.model:
        raise ModelMismatch(f"{rho.model} vs {x.model}")


def probability(rho: State, x: Proposition) -> float:
    """prob(x|rho): sum of weights, or trace(rho P_x)."""
    _check(rho, x)
    if rho.is_classical:
        p = float(sum(rho.payload[i] for i in x.payload))
    else:
        f = x.payload
        p = float(np.real(np.trace(f.conj().T @ rho.payload @ f)))
    if -TOL <= p < 0.0:
        p = 0.0
    elif 1.0 < p <= 1.0 + TOL:
        p = 1.0
    return p


def condition(rho: State, x: Proposition) -> State:
    """Posterior after ascertaining ``x``: Bayes restriction or the Lüders update."""
    p = probability(rho, x)
    if p <= MIN_CONDITION:
        raise ZeroProbabilityCondition(f"prob(x|rho) = {p:.3g}")
    if rho.is_classical:
        w = np.zeros(rho.model.d)
        idx = sorted(x.payload)
        w[idx] = rho.payload[idx]
        return State(rho.model, w / p)
    px = x.projector
    return State(rho.model, px @ rho.payload @ px / p)


def condition_chain(rho: State, conditions: Sequence[Proposition]) -> State:
    """Apply conditions in the order they were ascertained (first to last)."""
    for y in conditions:
        rho = condition(rho, y)
    return rho


def conditional_probability(x: Proposition, given: Sequence[Proposition] | Proposition, rho: State) -> float:
    if isinstance(given, Proposition):
        given = [given]
    return probability(condition_chain(rho, given), x)


def project_pure(e: Proposition, x: Proposition) -> Proposition:
    """The unique most accurate f ⊆ x with prob(f | x, e) = 1."""
    _check(State.pure(e), x)
    if are_orthogonal(e, x):
        raise OrthogonalPrior("prior is orthogonal to the condition")
    if e.is_classical:
        return e
    v = x.projector @ e.payload
    return Proposition.ray(e.model, v[:, 0])


def mix(states: Sequence[State], weights: Sequence[float]) -> State:
    """Convex-cone combination; weights need not sum to one."""
    weights = np.asarray(weights, dtype=float)
    if len(states) != len(weights) or not len(states):
        raise WeightOutOfRange("need one weight per state")
    if np.any(weights < 0) or weights.sum() > 1 + CLASSICAL_SLACK:
        raise WeightOutOfRange(f"weights {weights} outside the simplex")
    model = states[0].model
    for s in states:
        if s.model != model:
            raise ModelMismatch(f"{s.model} vs {model}")
    payload = sum(w * s.payload for w, s in zip(weights, states))
    return State(model, payload)


def is_pure(rho: State) -> bool:
    r = rho.normalized()
    if r.is_classical:
        return int(np.sum(r.payload > CLASSICAL_SLACK)) == 1
    purity = float(np.real(np.trace(r.payload @ r.payload)))
    return purity >= 1 - TOL


def random_state(model: Model, pure: bool, seed) -> State:
    rng = as_rng(seed)
    d = model.d
    if model.kind is Kind.CLASSICAL:
        if pure:
            return State.pure(Proposition.basis_ray(model, int(rng.integers(d))))
        return State(model, rng.dirichlet(np.ones(d)))
    model.require_constructible()
    real = model.kind is Kind.QUANTUM_REAL
    if pure:
        return State.pure(Proposition(model, linalg.haar_frame(rng, d, 1, real=real)))
    g = linalg.gaussian_matrix(rng, d, d, real)
    w = g @ g.conj().T
    return State(model, w / np.real(np.trace(w)))


@dataclass(frozen=True)
class KeepWeights:
    """Per-outcome retention probabilities of a preparation step."""

    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if any(not 0.0 <= v <= 1.0 for v in vals):
            raise WeightOutOfRange(f"keep weights {vals} outside [0, 1]")
        object.__setattr__(self, "values", vals)


def apply_preparation(sigma: State, g, m: Decomposition, keep: KeepWeights | Sequence[float]) -> State:
    """Rotate by ``g``, measure the parts of ``m``, keep outcome i with probability λ_i.

    ``g`` is anything with an ``act_state`` method (a symmetry group element).
    """
    if not isinstance(keep, KeepWeights):
        keep = KeepWeights(tuple(keep))
    if sigma.model != m.model:
        raise ModelMismatch(f"{sigma.model} vs {m.model}")
    if len(keep.values) != len(m.parts):
        raise BadDecomposition("need one keep weight per measured outcome")
    rotated = g.act_state(sigma)
    if rotated.is_classical:
        out = np.zeros(sigma.model.d)
        for lam, x in zip(keep.values, m.parts):
            idx = sorted(x.payload)
            out[idx] += lam * rotated.payload[idx]
        return State(sigma.model, out)
    out = np.zeros((sigma.model.d,) * 2, dtype=sigma.model.dtype)
    for lam, x in zip(keep.values, m.parts):
        px = x.projector
        out = out + lam * (px @ rotated.payload @ px)
    return State(sigma.model, out)


@dataclass
class SupersessionVerdict:
    ok: bool
    max_deviation: float
    priors_used: int
    priors_excluded: int
    failures: list = field(default_factory=list)


def check_supersession(e: Proposition, priors: Sequence[State], probes: Sequence[Proposition],
                       tol: float = TOL) -> SupersessionVerdict:
    """Conditioning on a most accurate ``e`` must erase every trace of the prior."""
    if e.granularity != 1:
        raise ValueError("e must be most accurate")
    reference = State.pure(e)
    expected = [probability(reference, y) for y in probes]
    dev = 0.0
    used = excluded = 0
    failures = []
    for k, rho in enumerate(priors):
        if probability(rho, e) <= MIN_CONDITION:
            excluded += 1
            continue
        used += 1
        post = condition(rho, e)
        for j, (y, want) in enumerate(zip(probes, expected)):
            delta = abs(probability(post, y) - want)
            dev = max(dev, delta)
            if delta > tol:
                failures.append((k, j, delta))
    return SupersessionVerdict(not failures, dev, used, excluded, failures)


def states_equal(rho: State, sigma: State, probes: Sequence[Proposition], tol: float = TOL) -> bool:
    """Operational equality: identical probabilities on the given (IC) probe list."""
    return all(abs(probability(rho, y) - probability(sigma, y)) <= tol for y in probes)
