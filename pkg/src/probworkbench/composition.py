"""Composite systems: tensor products of propositions and states, and the
dimension constraints composition imposes on a theory.

Index pairing is row-major: the pair (i, j) of an (d_A, d_B) composite maps to
i * d_B + j, which is also the ordering of ``np.kron``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import KindMismatch, UnsupportedModel
from .models import TOL, Kind, Model
from .propositions import Decomposition, Proposition, direct_sum
from .states import State, condition, probability
from .symmetry import dim_group, dim_most_accurate, mu_prime_symmetric


@dataclass(frozen=True)
class CompositeModel:
    A: Model
    B: Model

    def __post_init__(self):
        if self.A.kind != self.B.kind:
            raise KindMismatch(f"cannot compose {self.A.kind.value} with {self.B.kind.value}")

    @property
    def kind(self) -> Kind:
        return self.A.kind

    @property
    def d(self) -> int:
        return self.A.d * self.B.d

    @property
    def model(self) -> Model:
        return Model(self.kind, self.d)

    def pair_index(self, i: int, j: int) -> int:
        return i * self.B.d + j


def compose(A: Model, B: Model) -> CompositeModel:
    return CompositeModel(A, B)


def tensor_proposition(x: Proposition, y: Proposition) -> Proposition:
    """x × y: Cartesian product of index sets or Kronecker product of frames."""
    cm = CompositeModel(x.model, y.model)
    if cm.kind is Kind.CLASSICAL:
        return Proposition(cm.model, frozenset(cm.pair_index(i, j) for i in x.payload for j in y.payload))
    return Proposition(cm.model, np.kron(x.payload, y.payload))


def tensor_state(rho_a: State, rho_b: State) -> State:
    cm = CompositeModel(rho_a.model, rho_b.model)
    return State(cm.model, np.kron(rho_a.payload, rho_b.payload))


def tensor_power(x: Proposition, n: int) -> Proposition:
    out = x
    for _ in range(n - 1):
        out = tensor_proposition(out, x)
    return out


def partial_trace(rho: State, cm: CompositeModel, keep: str = "A") -> State:
    """Marginal state on one factor."""
    da, db = cm.A.d, cm.B.d
    if cm.kind is Kind.CLASSICAL:
        w = np.asarray(rho.payload).reshape(da, db)
        return State(cm.A if keep == "A" else cm.B, w.sum(axis=1 if keep == "A" else 0))
    t = np.asarray(rho.payload).reshape(da, db, da, db)
    if keep == "A":
        return State(cm.A, np.einsum("ijkj->ik", t))
    return State(cm.B, np.einsum("ijil->jl", t))


def composite_conditional(rho: State, cm: CompositeModel, x: Proposition, y: Proposition) -> float:
    """prob(x | y, rho) on a composite: condition on a_A × y, evaluate x × a_B."""
    given = tensor_proposition(Proposition.top(cm.A), y)
    target = tensor_proposition(x, Proposition.top(cm.B))
    return probability(condition(rho, given), target)


@dataclass
class DistributivityVerdict:
    ok: bool
    proposition_deviation: float
    probability_deviation: float


def check_distributivity(decomp_a: Decomposition, decomp_b: Decomposition, rho: State | None = None,
                         tol: float = TOL) -> DistributivityVerdict:
    """(⊕x_i) × (⊕y_j) = ⊕_ij x_i × y_j, as propositions and under ``rho``."""
    lhs = tensor_proposition(direct_sum(list(decomp_a.parts)), direct_sum(list(decomp_b.parts)))
    pieces = [tensor_proposition(x, y) for x, y in itertools.product(decomp_a.parts, decomp_b.parts)]
    rhs = direct_sum(pieces)
    prop_dev = linalg.max_abs(lhs.projector - rhs.projector)
    prob_dev = 0.0
    if rho is not None:
        prob_dev = abs(probability(rho, lhs) - sum(probability(rho, p) for p in pieces))
    return DistributivityVerdict(prop_dev <= tol and prob_dev <= tol, prop_dev, prob_dev)


@dataclass
class ConstraintVerdict:
    """One inequality evaluated on integers: ``lhs relation rhs``."""

    name: str
    kind: str
    inputs: dict
    lhs: int
    rhs: int
    relation: str
    status: str
    branch: str = ""
    sub: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "name": self.name, "kind": self.kind, "inputs": self.inputs, "lhs": self.lhs,
            "rhs": self.rhs, "relation": self.relation, "status": self.status,
        }
        if self.branch:
            out["branch"] = self.branch
        if self.sub:
            out["sub"] = {k: v.as_dict() for k, v in sorted(self.sub.items())}
        return out


def grade_lower_bound(lhs: int, rhs: int) -> str:
    """lhs ≥ rhs required."""
    if lhs == rhs:
        return "saturated"
    return "satisfied" if lhs > rhs else "violated"


def grade_upper_bound(lhs: int, rhs: int) -> str:
    """lhs ≤ rhs required."""
    if lhs == rhs:
        return "saturated"
    return "satisfied" if lhs < rhs else "violated"


def _lie_branch(kind: Kind, d_a: int, d_b: int) -> ConstraintVerdict:
    lhs = dim_group(kind, d_a * d_b)
    rhs = dim_group(kind, d_a) * dim_group(kind, d_b)
    return ConstraintVerdict("composition", kind.value, {"d_A": d_a, "d_B": d_b}, lhs, rhs, ">=",
                             grade_lower_bound(lhs, rhs), branch="continuous")


def composition_constraint(kind, d_a: int, d_b: int) -> ConstraintVerdict:
    """Group-composition constraint.

    Finite groups compare the sizes of largest independent subsets, mu'; Lie
    groups compare manifold dimensions.  For the classical kind the headline
    verdict is the finite branch and the (trivially saturated, 0 >= 0) Lie
    dimension comparison is attached under ``sub``.
    """
    kind = Kind(kind)
    if d_a < 1 or d_b < 1:
        raise ValueError("granularities must be positive")
    if kind is Kind.CLASSICAL:
        lhs = mu_prime_symmetric(d_a * d_b)
        rhs = mu_prime_symmetric(d_a) * mu_prime_symmetric(d_b)
        v = ConstraintVerdict("composition", kind.value, {"d_A": d_a, "d_B": d_b}, lhs, rhs, ">=",
                              grade_lower_bound(lhs, rhs), branch="finite")
        v.sub["lie_dimension"] = _lie_branch(kind, d_a, d_b)
        return v
    return _lie_branch(kind, d_a, d_b)


def entanglement_dim_gap(d_a: int, d_b: int, kind=Kind.QUANTUM_COMPLEX) -> int:
    """dim X(d_A d_B) - dim X(d_A) - dim X(d_B): room for non-product pure states."""
    kind = Kind(kind)
    return dim_most_accurate(kind, d_a * d_b) - dim_most_accurate(kind, d_a) - dim_most_accurate(kind, d_b)


def entangled_witness_state(d_a: int, d_b: int, kind=Kind.QUANTUM_COMPLEX) -> State:
    """Maximally correlated pure state sum_i |ii> / sqrt(min(d_A, d_B))."""
    kind = Kind(kind)
    if not kind.is_quantum:
        raise UnsupportedModel("entangled states need a quantum model")
    if d_a < 2 or d_b < 2:
        raise ValueError("both factors need granularity >= 2")
    cm = CompositeModel(Model(kind, d_a), Model(kind, d_b))
    r = min(d_a, d_b)
    psi = np.zeros(cm.d, dtype=cm.model.dtype)
    for i in range(r):
        psi[cm.pair_index(i, i)] = 1 / np.sqrt(r)
    return State.pure(Proposition.ray(cm.model, psi))


def marginal_purity(rho: State, cm: CompositeModel, keep: str = "A") -> float:
    m = partial_trace(rho, cm, keep).normalized()
    return float(np.real(np.trace(m.matrix @ m.matrix)))
