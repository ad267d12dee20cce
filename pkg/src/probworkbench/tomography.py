"""Local tomography: informationally complete proposition sets and the
reconstruction of composite statistics from product-proposition probabilities.

States and effects are handled through real coordinates in an orthonormal
basis of self-adjoint matrices (diagonal matrices for classical models), so
prob(x|rho) is a dot product and "knowing the probabilities of an IC set" is
an invertible linear system.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .composition import (
    ConstraintVerdict,
    grade_upper_bound,
    tensor_proposition,
)
from .errors import ModelMismatch, RankDeficient
from .models import TOL, Kind, Model
from .propositions import Proposition
from .states import State, probability, random_state
from .symmetry import state_parameter_count

# Rows are unit-normalized before this singular-value test.
INJECTIVITY_FLOOR = 1e-8
# Chain denominators below this are bypassed via the division-free path.
DENOMINATOR_FLOOR = 1e-10


def effect_coordinates(x: Proposition) -> np.ndarray:
    """Coordinates c(P_x) with prob(x|rho) = c(P_x) . c(rho)."""
    if x.is_classical:
        return np.diag(x.projector).copy()
    return linalg.hermitian_coordinates(x.projector, real=x.model.kind is Kind.QUANTUM_REAL)


def state_coordinates(rho: State) -> np.ndarray:
    if rho.is_classical:
        return np.array(rho.payload, dtype=float)
    return linalg.hermitian_coordinates(rho.payload, real=rho.model.kind is Kind.QUANTUM_REAL)


@dataclass(frozen=True, eq=False)
class ICSet:
    """S(d) propositions whose probabilities fix any state on the model."""

    model: Model
    propositions: tuple
    mece_index: tuple
    effects: np.ndarray  # row i = effect_coordinates(propositions[i])

    def __len__(self):
        return len(self.propositions)

    def smallest_singular_value(self) -> float:
        rows = self.effects / np.linalg.norm(self.effects, axis=1, keepdims=True)
        return float(np.linalg.svd(rows, compute_uv=False)[-1])

    def probabilities(self, rho: State) -> np.ndarray:
        return np.array([probability(rho, b) for b in self.propositions])

    def expansion(self, x: Proposition) -> np.ndarray:
        """alpha(x) with prob(x|rho) = alpha(x) . probabilities(rho) for every rho."""
        return np.linalg.solve(self.effects.T, effect_coordinates(x))

    def extend(self, ic_probabilities: np.ndarray, x: Proposition) -> float:
        """Linear extension: prob(x|.) from the IC probability list of the same state."""
        return float(self.expansion(x) @ np.asarray(ic_probabilities))


def informationally_complete_set(model: Model, seed=None) -> ICSet:
    """Fixed Hermitian-basis family: basis rays, then (|j>+|k>) and (|j>+i|k>) rays.

    ``seed`` is accepted for interface uniformity; the construction is deterministic.
    """
    model.require_constructible()
    d = model.d
    props = [Proposition.basis_ray(model, j) for j in range(d)]
    if model.kind.is_quantum:
        eye = np.eye(d)
        pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
        props += [Proposition.ray(model, eye[j] + eye[k]) for j, k in pairs]
        if model.kind is Kind.QUANTUM_COMPLEX:
            props += [Proposition.ray(model, eye[j] + 1j * eye[k]) for j, k in pairs]
    effects = np.array([effect_coordinates(p) for p in props])
    ic = ICSet(model, tuple(props), tuple(range(d)), effects)
    if len(props) != state_parameter_count(model.kind, d):
        raise RankDeficient("IC set size differs from the state parameter count")
    if ic.smallest_singular_value() <= INJECTIVITY_FLOOR:
        raise RankDeficient("IC effect map is not injective")
    return ic


@dataclass
class JointTable:
    """prob(b_i^A × b_j^B | rho) for every pair of IC propositions."""

    values: np.ndarray
    ic_a: ICSet
    ic_b: ICSet

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (len(self.ic_a), len(self.ic_b)):
            raise ValueError("table shape does not match the IC sets")
        if np.any(self.values < -TOL) or np.any(self.values > 1 + TOL):
            raise ValueError("table entries must be probabilities")


def joint_probability_table(rho: State, ic_a: ICSet, ic_b: ICSet) -> JointTable:
    if rho.model != Model(ic_a.model.kind, ic_a.model.d * ic_b.model.d):
        raise ModelMismatch(f"{rho.model} is not the composite of {ic_a.model} and {ic_b.model}")
    t = np.array([[probability(rho, tensor_proposition(a, b)) for b in ic_b.propositions]
                  for a in ic_a.propositions])
    return JointTable(t, ic_a, ic_b)


class JointReconstruction:
    """q(x, y) = prob(x^A × y^B | rho) rebuilt from a JointTable.

    ``chain`` follows the marginalize / condition / extend / re-multiply
    sequence; ``linear`` is the direct bilinear extension alpha_A(x)^T T alpha_B(y).
    They are independent routes to the same number.
    """

    def __init__(self, table: JointTable):
        self.table = table
        self.ic_a = table.ic_a
        self.ic_b = table.ic_b
        t = table.values
        # prob(a^A × b_j^B) by distributivity and the sum rule over the MECE subset.
        self.a_times_b = t[list(self.ic_a.mece_index), :].sum(axis=0)
        self.bypassed = 0

    def __call__(self, x: Proposition, y: Proposition) -> float:
        return self.chain(x, y)

    def linear(self, x: Proposition, y: Proposition) -> float:
        return float(self.ic_a.expansion(x) @ self.table.values @ self.ic_b.expansion(y))

    def x_times_b(self, x: Proposition) -> np.ndarray:
        """prob(x^A × b_j^B) for all j."""
        t = self.table.values
        alpha = self.ic_a.expansion(x)
        out = np.empty(t.shape[1])
        for j, denom in enumerate(self.a_times_b):
            if denom > DENOMINATOR_FLOOR:
                conditional_list = t[:, j] / denom          # prob(b_i^A | a^A × b_j^B)
                conditional_x = alpha @ conditional_list    # prob(x^A | a^A × b_j^B)
                out[j] = conditional_x * denom
            else:
                self.bypassed += 1
                out[j] = alpha @ t[:, j]
        return out

    def chain(self, x: Proposition, y: Proposition) -> float:
        xb = self.x_times_b(x)
        x_times_a = float(xb[list(self.ic_b.mece_index)].sum())
        if x_times_a > DENOMINATOR_FLOOR:
            conditional_list = xb / x_times_a               # prob(b_j^B | x^A × a^B)
            conditional_y = self.ic_b.expansion(y) @ conditional_list
            return float(conditional_y * x_times_a)
        self.bypassed += 1
        return float(self.ic_b.expansion(y) @ xb)

    def state(self) -> State:
        """The composite state itself, rebuilt from the table (linear inversion)."""
        ma, mb = self.ic_a.model, self.ic_b.model
        ca = np.linalg.inv(self.ic_a.effects)
        cb = np.linalg.inv(self.ic_b.effects)
        coords = ca @ self.table.values @ cb.T  # coords[p, q]: basis_p^A ⊗ basis_q^B
        model = Model(ma.kind, ma.d * mb.d)
        if ma.kind is Kind.CLASSICAL:
            return State(model, coords.reshape(-1))
        real = ma.kind is Kind.QUANTUM_REAL
        basis_a = [linalg.from_hermitian_coordinates(e, ma.d, real) for e in np.eye(len(self.ic_a))]
        basis_b = [linalg.from_hermitian_coordinates(e, mb.d, real) for e in np.eye(len(self.ic_b))]
        rho = sum(coords[p, q] * np.kron(basis_a[p], basis_b[q])
                  for p in range(len(basis_a)) for q in range(len(basis_b)))
        return State(model, rho)


def reconstruct_joint(table: JointTable, ic_a: ICSet | None = None, ic_b: ICSet | None = None) -> JointReconstruction:
    if ic_a is not None and ic_a is not table.ic_a or ic_b is not None and ic_b is not table.ic_b:
        table = JointTable(table.values, ic_a or table.ic_a, ic_b or table.ic_b)
    for ic in (table.ic_a, table.ic_b):
        if ic.smallest_singular_value() <= INJECTIVITY_FLOOR:
            raise RankDeficient("reconstruction needs injective IC sets")
    return JointReconstruction(table)


def reductionism_check(kind, d_a: int, d_b: int) -> ConstraintVerdict:
    """S(d_A d_B) <= S(d_A) S(d_B); saturation means no holistic degrees of freedom."""
    kind = Kind(kind)
    if d_a < 1 or d_b < 1:
        raise ValueError("granularities must be positive")
    lhs = state_parameter_count(kind, d_a * d_b)
    rhs = state_parameter_count(kind, d_a) * state_parameter_count(kind, d_b)
    status = grade_upper_bound(lhs, rhs)
    if status == "satisfied":
        status = "strict"
    return ConstraintVerdict("reductionism", kind.value, {"d_A": d_a, "d_B": d_b}, lhs, rhs, "<=", status)


def indistinguishable_pair(ic: ICSet, drop: int, seed) -> tuple[State, State] | None:
    """Two distinct states that agree on the IC list with entry ``drop`` removed.

    Returns None when the reduced list is still injective.
    """
    reduced = np.delete(ic.effects, drop, axis=0)
    _, s, vt = np.linalg.svd(reduced)
    if len(s) == ic.effects.shape[1] and s[-1] > INJECTIVITY_FLOOR:
        return None
    model = ic.model
    base = random_state(model, pure=False, seed=seed)
    base = State(model, 0.5 * base.payload)
    if model.kind is Kind.CLASSICAL:
        direction = vt[-1]
        headroom = float(np.min(base.payload))
    else:
        direction = linalg.from_hermitian_coordinates(vt[-1], model.d, model.kind is Kind.QUANTUM_REAL)
        headroom = float(np.linalg.eigvalsh(base.payload)[0])
    step = 0.5 * headroom / linalg.max_abs(np.linalg.eigvalsh(np.atleast_2d(direction))
                                           if direction.ndim == 2 else direction)
    return base, State(model, base.payload + step * direction)
