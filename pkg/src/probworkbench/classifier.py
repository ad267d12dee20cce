"""Theory-space classifier.

A candidate theory is fixed by three integers: the exponent mu of the
parameter count S(d) = d**mu, the group dimension at granularity one (0 or 1),
and the manifold dimension of most accurate propositions at granularity two.
Each candidate is tested against the constraints every admissible theory
shares (parameter counting, homogeneous-space consistency, composition,
reductionism).  Continuous candidates must also have dim X linear in d with a
quadratic group dimension, and they pass through a convexity filter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .composition import ConstraintVerdict, composition_constraint, grade_lower_bound, grade_upper_bound
from .errors import BadParameter
from .models import Kind
from .propositions import compositions
from .symmetry import (
    dim_group,
    dim_group_variant,
    mu_prime_symmetric,
    state_parameter_count,
)
from .tomography import reductionism_check

LABELS = ("classical", "semi-classical", "quantum", "real-pair-orthogonal", "higher-order", "other")

# Candidates whose continuous orbit X(2) is a torus S^1 x S^1: not simply
# connected, so X(d) cannot bound a convex state space.  Recorded, not computed.
CONVEXITY_EXCLUSIONS = {
    (0, 2): "X(2) ~ S^1 x S^1 for O(d)xO(d); a torus is not simply connected "
            "and cannot bound a convex state space",
}

STATUS_ADMISSIBLE = "admissible"
STATUS_SMOOTH = "admissible-smooth"
STATUS_CONVEXITY = "excluded-convexity"
STATUS_HIGHER = "flagged-higher-order"
STATUS_INCONSISTENT = "inconsistent"
STATUS_VIOLATED = "excluded-constraint"


@dataclass(frozen=True)
class TheoryCandidate:
    mu: int
    dim_g1: int
    dim_x2: int

    def __post_init__(self):
        if int(self.mu) != self.mu or self.mu < 1:
            raise BadParameter(f"mu must be a positive integer, got {self.mu!r}")
        if self.dim_g1 not in (0, 1):
            raise BadParameter(f"dim G(1) must be 0 or 1, got {self.dim_g1!r}")
        if int(self.dim_x2) != self.dim_x2 or self.dim_x2 < 0 or self.dim_x2 % 2:
            raise BadParameter(f"dim X(2) must be a nonnegative even integer, got {self.dim_x2!r}")

    # power-law closed forms
    def S(self, d: int) -> int:
        return d ** self.mu

    def dim_group(self, d: int) -> int:
        return d ** self.mu + (self.dim_g1 - 1) * d

    def dim_x_from_group(self, d: int) -> int:
        """dim X(d) = dim G(d) - dim G(d-1) - dim G(1), via X(d) ~ G(d)/(G(d-1) x G(1))."""
        if d <= 1:
            return 0
        return self.dim_group(d) - self.dim_group(d - 1) - self.dim_group(1)

    def dim_decomposition(self, kvec) -> int:
        return self.dim_group(sum(kvec)) - sum(self.dim_group(k) for k in kvec)

    # smooth (linear dim X) closed forms
    def dim_x(self, d: int) -> int:
        return self.dim_x2 * (d - 1) if d >= 1 else 0

    def dim_group_quadratic(self, d: int) -> int:
        return self.dim_x2 // 2 * d * (d - 1) + self.dim_g1 * d

    def S_quadratic(self, d: int) -> int:
        return self.dim_x2 // 2 * d * (d - 1) + d

    @property
    def is_discrete(self) -> bool:
        """No continuous family of most accurate propositions."""
        return self.dim_x2 == 0

    @property
    def is_finite_group(self) -> bool:
        return self.mu == 1 and self.dim_g1 == 0

    @property
    def label(self) -> str:
        if self.mu == 1 and self.dim_x2 == 0:
            return "classical" if self.dim_g1 == 0 else "semi-classical"
        if self.mu == 2 and self.dim_x2 == 2:
            return "quantum" if self.dim_g1 == 1 else "real-pair-orthogonal"
        if self.mu >= 3 and self.dim_x2 == 2 ** self.mu - 2:
            return "higher-order"
        return "other"

    @property
    def group_name(self) -> str:
        return {
            "classical": "S_d",
            "semi-classical": "U(1)^d",
            "quantum": "U(d)",
            "real-pair-orthogonal": "O(d)xO(d)",
        }.get(self.label, "none known")


def candidate(mu: int, dim_g1: int, dim_x2: int) -> TheoryCandidate:
    return TheoryCandidate(mu, dim_g1, dim_x2)


QUANTUM = TheoryCandidate(2, 1, 2)
CLASSICAL = TheoryCandidate(1, 0, 0)
SEMI_CLASSICAL = TheoryCandidate(1, 1, 0)
REAL_PAIR = TheoryCandidate(2, 0, 2)


def _verdict(name, lhs, rhs, relation, status, inputs=None) -> ConstraintVerdict:
    return ConstraintVerdict(name, "candidate", inputs or {}, lhs, rhs, relation, status)


def _equality(name, pairs) -> ConstraintVerdict:
    """Worst case over (inputs, lhs, rhs) triples that must be equal."""
    for inputs, lhs, rhs in pairs:
        if lhs != rhs:
            return _verdict(name, lhs, rhs, "==", "violated", inputs)
    inputs, lhs, rhs = pairs[-1]
    return _verdict(name, lhs, rhs, "==", "satisfied", inputs)


@dataclass
class ConstraintVerdicts:
    candidate: TheoryCandidate
    d_max: int
    checks: dict = field(default_factory=dict)
    status: str = ""
    note: str = ""

    @property
    def arithmetic_ok(self) -> bool:
        core = ("dim_x2_consistency", "parameter_rule", "homogeneous_space", "composition", "reductionism")
        return all(self.checks[c].status != "violated" for c in core)

    def as_dict(self) -> dict:
        c = self.candidate
        return {
            "mu": c.mu, "dim_g1": c.dim_g1, "dim_x2": c.dim_x2, "label": c.label,
            "group": c.group_name, "status": self.status, "note": self.note,
            "checks": {k: v.as_dict() for k, v in sorted(self.checks.items())},
        }


def evaluate_constraints(c: TheoryCandidate, d_max: int = 8) -> ConstraintVerdicts:
    if d_max < 4:
        raise BadParameter("d_max must be at least 4")
    out = ConstraintVerdicts(c, d_max)
    checks = out.checks

    # dim X(2) from the isomorphism X(2) ~ G(2)/(G(1) x G(1)) must match the parameter.
    checks["dim_x2_consistency"] = _equality(
        "dim_x2_consistency", [({"d": 2}, c.dim_x_from_group(2), c.dim_x2),
                               ({"d": 2}, c.S(2), c.S_quadratic(2))])

    rule, negative = [], None
    for d in range(1, d_max + 1):
        for kvec in compositions(d):
            dim_m = c.dim_decomposition(kvec)
            rule.append(({"k": list(kvec)}, c.S(d), dim_m + sum(c.S(k) for k in kvec)))
            if dim_m < 0 and negative is None:
                negative = ({"k": list(kvec)}, dim_m)
    checks["parameter_rule"] = _equality("parameter_rule", rule)
    # G(d) / (G(k_1) x ... x G(k_r)) must be a manifold of nonnegative dimension.
    if negative is None:
        smallest = min(c.dim_decomposition(k) for d in range(1, d_max + 1) for k in compositions(d))
        checks["homogeneous_space"] = _verdict("homogeneous_space", smallest, 0, ">=", "satisfied")
    else:
        checks["homogeneous_space"] = _verdict("homogeneous_space", negative[1], 0, ">=", "violated", negative[0])

    worst = {}
    for da in range(2, d_max + 1):
        for db in range(2, d_max // da + 1):
            inputs = {"d_A": da, "d_B": db}
            if c.is_finite_group:
                lhs, rhs = mu_prime_symmetric(da * db), mu_prime_symmetric(da) * mu_prime_symmetric(db)
            else:
                lhs, rhs = c.dim_group(da * db), c.dim_group(da) * c.dim_group(db)
            _keep_worst(worst, "composition", grade_lower_bound(lhs, rhs), inputs, lhs, rhs)
            lhs, rhs = c.S(da * db), c.S(da) * c.S(db)
            _keep_worst(worst, "reductionism", grade_upper_bound(lhs, rhs), inputs, lhs, rhs)
    status, inputs, lhs, rhs = worst["composition"]
    checks["composition"] = _verdict("composition", lhs, rhs, ">=", status, inputs)
    checks["composition"].branch = "finite" if c.is_finite_group else "continuous"
    status, inputs, lhs, rhs = worst["reductionism"]
    checks["reductionism"] = _verdict("reductionism", lhs, rhs, "<=", status, inputs)

    if c.is_discrete:
        checks["dim_x_recursion"] = _verdict("dim_x_recursion", 0, 0, "==", "not-applicable")
        checks["quadratic_form"] = _verdict("quadratic_form", 0, 0, "==", "not-applicable")
    else:
        rec = []
        for d in range(1, d_max + 1):
            for l in range(1, d + 1):
                rec.append(({"d": d, "l": l}, c.dim_x_from_group(d),
                            c.dim_x_from_group(d - l + 1) + c.dim_x_from_group(l)))
        checks["dim_x_recursion"] = _equality("dim_x_recursion", rec)
        quad = [({"d": d}, c.dim_group(d), c.dim_group_quadratic(d)) for d in range(0, d_max + 1)]
        quad += [({"d": d}, c.S(d), c.S_quadratic(d)) for d in range(0, d_max + 1)]
        checks["quadratic_form"] = _equality("quadratic_form", quad)

    key = (c.dim_g1, c.dim_x2)
    fires = key in CONVEXITY_EXCLUSIONS and not c.is_discrete
    checks["convexity"] = _verdict("convexity", int(fires), 0, "==",
                                   "violated" if fires else "satisfied")
    if fires:
        checks["convexity"].inputs = {"reason": CONVEXITY_EXCLUSIONS[key]}

    if checks["dim_x2_consistency"].status == "violated":
        out.status = STATUS_INCONSISTENT
        out.note = (f"power law S(2)={c.S(2)} vs smooth form S(2)={c.S_quadratic(2)}; "
                    f"dim X(2) from group = {c.dim_x_from_group(2)} vs parameter {c.dim_x2}")
    elif not out.arithmetic_ok:
        out.status = STATUS_VIOLATED
        out.note = ", ".join(k for k, v in checks.items() if v.status == "violated")
    elif c.is_discrete:
        out.status = STATUS_ADMISSIBLE
        out.note = "discrete: continuity holds vacuously"
    elif checks["dim_x_recursion"].status == "violated" or checks["quadratic_form"].status == "violated":
        out.status = STATUS_HIGHER
        out.note = "no known group realization; dim X(d) not linear in d, hence not continuous"
    elif fires:
        out.status = STATUS_CONVEXITY
        out.note = CONVEXITY_EXCLUSIONS[key]
    else:
        out.status = STATUS_SMOOTH
        out.note = "unitary group U(d)"
    return out


def _rank(status: str) -> int:
    return {"saturated": 0, "satisfied": 1, "violated": 2}[status]


def _keep_worst(worst: dict, name: str, status: str, inputs, lhs, rhs):
    """Keep the first occurrence of the worst status seen so far."""
    if name not in worst or _rank(status) > _rank(worst[name][0]):
        worst[name] = (status, inputs, lhs, rhs)


def scan_candidates(mu_max: int, d_max: int = 8) -> list[ConstraintVerdicts]:
    """Every grid point mu <= mu_max, dim G(1) in {0, 1}, even dim X(2) <= 2**mu_max - 2."""
    if mu_max < 1:
        raise BadParameter("mu_max must be positive")
    out = []
    for mu in range(1, mu_max + 1):
        for g1 in (0, 1):
            for x2 in range(0, 2 ** mu_max - 1, 2):
                out.append(evaluate_constraints(TheoryCandidate(mu, g1, x2), d_max))
    return out


def enumerate_admissible(mu_max: int, d_max: int = 8) -> list[tuple[TheoryCandidate, ConstraintVerdicts]]:
    """Candidates surviving the parameter-consistency check, in (mu, dim G(1)) order."""
    if mu_max < 3:
        raise BadParameter("mu_max must be at least 3")
    return [(v.candidate, v) for v in scan_candidates(mu_max, d_max) if v.status != STATUS_INCONSISTENT]


KNOWN_KINDS = (Kind.CLASSICAL, Kind.QUANTUM_COMPLEX, Kind.QUANTUM_REAL, Kind.QUATERNIONIC)


def known_theory_report(d_a: int = 2, d_b: int = 2) -> list[dict]:
    """Dimension counts and constraint verdicts for the four concrete theories."""
    rows = []
    for kind in KNOWN_KINDS:
        comp = composition_constraint(kind, d_a, d_b)
        red = reductionism_check(kind, d_a, d_b)
        rows.append({
            "kind": kind.value,
            "S(2)": state_parameter_count(kind, 2),
            "S(4)": state_parameter_count(kind, 4),
            "dimG(2)": dim_group(kind, 2),
            "dimG(4)": dim_group(kind, 4),
            "composition": comp.as_dict(),
            "reductionism": red.as_dict(),
        })
    return rows


def quantum_matches_unitary(d_max: int = 12) -> bool:
    """Cross-check of the quantum candidate against the unitary-group formulas."""
    return all(
        QUANTUM.dim_group(d) == dim_group(Kind.QUANTUM_COMPLEX, d) == dim_group_variant("U(d)", d)
        and QUANTUM.S(d) == state_parameter_count(Kind.QUANTUM_COMPLEX, d)
        for d in range(d_max + 1)
    )
