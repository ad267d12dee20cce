"""Continuity numerics: saturation radius delta(eps), its sqrt(N) scaling, tolerance
of O(1/sqrt(N)) preparation errors, and the Zeno limit of chopped-up paths.

Radii are group-metric lengths (Frobenius norm of the generator, see
``symmetry``).  A ray reached from e0 along a horizontal generator of norm r
sits at Fubini-Study angle METRIC_C * r, which is the shortest way to reach it,
so balls B_a(e0; r) in the space of rays are sampled through horizontal
generators only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .composition import tensor_power
from .errors import BadNesting, ModelMismatch, RegimeViolation
from .models import Kind, Model, as_rng
from .propositions import Proposition, implies, relative_complement
from .states import State, probability
from .symmetry import METRIC_C, GroupElement, element_near_identity, exp_generator

BISECTION_STEPS = 20
# Largest distance between two rays: orthogonal rays, angle pi/2.
DIAMETER = (math.pi / 2) / METRIC_C


def survival_probability(e: Proposition, g: GroupElement) -> float:
    """prob(e | g(e))."""
    if e.model != g.model:
        raise ModelMismatch(f"{e.model} vs {g.model}")
    return probability(State.pure(g.act(e)), e)


def horizontal_generator(e: Proposition, v: np.ndarray) -> np.ndarray:
    """Unit-norm generator rotating the ray e towards the unit vector v ⊥ e."""
    u = e.payload[:, 0]
    k = np.outer(v, u.conj()) - np.outer(u, v.conj())
    return k / np.linalg.norm(k, "fro")


@dataclass(frozen=True, eq=False)
class GeodesicPath:
    """t -> exp(t K) for a unit-norm generator K, starting at the identity."""

    model: Model
    base: Proposition
    generator: np.ndarray

    def __post_init__(self):
        if not self.model.kind.is_quantum:
            raise ModelMismatch("geodesics need a continuous group")
        k = np.array(self.generator, dtype=self.model.dtype)
        if linalg.max_abs(k + k.conj().T) > 1e-12:
            raise ValueError("generator must be anti-self-adjoint")
        k = k / np.linalg.norm(k, "fro")
        k.setflags(write=False)
        object.__setattr__(self, "generator", k)

    @classmethod
    def towards(cls, e: Proposition, target: Proposition) -> "GeodesicPath":
        """Shortest path moving ``e`` towards the orthogonal ray ``target``."""
        return cls(e.model, e, horizontal_generator(e, target.payload[:, 0]))

    def point(self, t: float) -> GroupElement:
        return exp_generator(self.model, t * self.generator)


def qubit_path(real: bool = False) -> GeodesicPath:
    """Reference path on a qubit: |0> rotating towards |1>."""
    m = Model(Kind.QUANTUM_REAL if real else Kind.QUANTUM_COMPLEX, 2)
    return GeodesicPath.towards(Proposition.basis_ray(m, 0), Proposition.basis_ray(m, 1))


@dataclass
class ContinuityEstimate:
    delta: float
    capped: bool = False
    discrete: bool = False
    note: str = ""


def _ball_directions(a: Proposition, e0: Proposition, n: int, rng) -> list[tuple[np.ndarray, float]]:
    """Directions v ⊥ e0 inside ``a`` and radius fractions; half the samples on the boundary."""
    rest = relative_complement(a, e0)
    real = a.model.kind is Kind.QUANTUM_REAL
    out = []
    for i in range(n):
        c = linalg.gaussian_matrix(rng, rest.granularity, 1, real)[:, 0]
        v = rest.payload @ (c / np.linalg.norm(c))
        frac = 1.0 if i % 2 == 0 else float(rng.uniform(0.0, 1.0))
        out.append((v, frac))
    return out


def continuity_witness(a: Proposition, x: Proposition, e0: Proposition, eps: float,
                       n_samples: int = 64, seed=0) -> ContinuityEstimate:
    """Largest radius delta such that every sampled e in B_a(e0; delta) has prob(x|e) > 1 - eps.

    Bisection over the radius with a fixed sample of directions, so the
    predicate is monotone in the radius.  Sampled directions can only miss the
    worst case, so the estimate approaches the true supremum from above.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if not (e0.granularity == 1 and implies(e0, x) and implies(x, a)):
        raise BadNesting("need a most accurate e0 with e0 ⊆ x ⊆ a")
    if a.model.kind is Kind.CLASSICAL:
        return ContinuityEstimate(math.inf, discrete=True,
                                  note="discrete: vacuously continuous, X(d) has no nontrivial balls")
    if a.granularity == 1:
        return ContinuityEstimate(DIAMETER, capped=True, note="X_a is a single point")
    rng = as_rng(seed)
    samples = _ball_directions(a, e0, n_samples, rng)

    def holds(radius: float) -> bool:
        for v, frac in samples:
            g = exp_generator(a.model, radius * frac * horizontal_generator(e0, v))
            if probability(State.pure(g.act(e0)), x) <= 1 - eps:
                return False
        return True

    if holds(DIAMETER):
        return ContinuityEstimate(DIAMETER, capped=True, note="capped at the metric diameter")
    lo, hi = 0.0, DIAMETER
    for _ in range(BISECTION_STEPS):
        mid = (lo + hi) / 2
        if holds(mid):
            lo = mid
        else:
            hi = mid
    return ContinuityEstimate(lo)


def delta_closed_form(eps: float) -> float:
    """Exact saturation radius for x = e0: cos^2(METRIC_C * delta) = 1 - eps."""
    return math.asin(math.sqrt(eps)) / METRIC_C


def estimate_delta(eps: float, d: int, seed=0, e0: Proposition | None = None, real: bool = False,
                   n_samples: int = 64) -> float:
    m = Model(Kind.QUANTUM_REAL if real else Kind.QUANTUM_COMPLEX, d)
    e0 = e0 if e0 is not None else Proposition.basis_ray(m, 0)
    return continuity_witness(Proposition.top(m), e0, e0, eps, n_samples, seed).delta


def scaling_check(eps: float, N: int, d: int, seed=0) -> float:
    """delta(N eps) / (sqrt(N) delta(eps)); close to one in the small-eps regime."""
    if N < 1:
        raise ValueError("N must be positive")
    if N * eps >= 0.1:
        raise RegimeViolation(f"N*eps = {N * eps:g} is outside the small-eps regime")
    if N == 1:
        return 1.0
    d1 = estimate_delta(eps, d, seed)
    dn = estimate_delta(N * eps, d, seed)
    return dn / (math.sqrt(N) * d1)


def zeno_limit(path: GeodesicPath, delta: float, N_list: Sequence[int]) -> dict[int, float]:
    """Survival of ``path.base`` when a path of length delta is cut into N measured steps."""
    if not 0 < delta < math.inf:
        raise ValueError("delta must be positive and finite")
    e = path.base
    out = {}
    for n in N_list:
        step = path.point(delta / n)
        p = survival_probability(e, step)
        product = 1.0
        for _ in range(n):
            product *= p
        out[int(n)] = product
    return out


def zeno_closed_form(c_delta: float, N: int) -> float:
    """cos^{2N}(c delta / N) for a horizontal qubit path."""
    return math.cos(c_delta / N) ** (2 * N)


@dataclass
class ToleranceVerdict:
    ok: bool
    product: float
    threshold: float
    radius: float
    composite_product: float | None = None
    factorization_error: float | None = None


def preparation_tolerance_check(e: Proposition, eps: float, N: int, seed=0,
                                explicit_max_copies: int = 4) -> ToleranceVerdict:
    """N copies each disturbed by a group element at radius delta(eps)/sqrt(N).

    The joint survival of e^{×N} must stay above 1 - eps (with 0.1 eps slack
    for the sampled delta).  For N <= ``explicit_max_copies`` the composite is
    built explicitly and compared with the product of single-copy survivals.
    """
    if not e.model.kind.is_quantum:
        raise ModelMismatch("needs a quantum model")
    rng = as_rng(seed)
    delta = continuity_witness(Proposition.top(e.model), e, e, eps, seed=rng).delta
    radius = float(delta / math.sqrt(N))
    elements = [element_near_identity(e.model, radius, rng) for _ in range(N)]
    product = 1.0
    for g in elements:
        product *= survival_probability(e, g)
    threshold = 1 - eps - 0.1 * eps
    verdict = ToleranceVerdict(product >= threshold, product, threshold, radius)
    if N <= explicit_max_copies:
        composite = tensor_power(e, N)
        u = elements[0].payload
        for g in elements[1:]:
            u = np.kron(u, g.payload)
        moved = Proposition(composite.model, u @ composite.payload)
        verdict.composite_product = probability(State.pure(moved), composite)
        verdict.factorization_error = abs(verdict.composite_product - product)
    return verdict


@dataclass
class ZenoReport:
    eps_grid: list
    deltas: dict = field(default_factory=dict)
    scaling_ratios: dict = field(default_factory=dict)
    survival: dict = field(default_factory=dict)
    closed_form: dict = field(default_factory=dict)

    @property
    def monotone(self) -> bool:
        vals = [self.deltas[e] for e in sorted(self.deltas)]
        return all(b >= a for a, b in zip(vals, vals[1:]))


def zeno_report(eps_grid: Sequence[float], N_list: Sequence[int], d: int = 2, seed=0,
                c_delta: float = 0.5) -> ZenoReport:
    rep = ZenoReport(sorted(float(e) for e in eps_grid))
    for eps in rep.eps_grid:
        rep.deltas[eps] = estimate_delta(eps, d, seed)
        for n in N_list:
            if n * eps < 0.1:
                rep.scaling_ratios[(eps, int(n))] = scaling_check(eps, int(n), d, seed)
    rep.survival = zeno_limit(qubit_path(), c_delta / METRIC_C, N_list)
    rep.closed_form = {int(n): zeno_closed_form(c_delta, int(n)) for n in N_list}
    return rep

