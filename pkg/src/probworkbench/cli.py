"""Command-line verifier.

    probworkbench verify --model quantum-complex --dim 4 --seed 7
    probworkbench classify --mu-max 3
    probworkbench counterexamples
    probworkbench zeno --eps 1e-4 4e-4 --N 1 4 16 100 200
    probworkbench tomography --dA 2 --dB 2 --trials 100

Exit status: 0 when every check passes, 1 on any failed check, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .classifier import (
    STATUS_ADMISSIBLE,
    STATUS_CONVEXITY,
    STATUS_HIGHER,
    STATUS_INCONSISTENT,
    STATUS_SMOOTH,
    known_theory_report,
    quantum_matches_unitary,
    scan_candidates,
)
from .composition import (
    CompositeModel,
    entangled_witness_state,
    entanglement_dim_gap,
    marginal_purity,
    tensor_proposition,
)
from .laws import LAWS, run_law
from .models import Kind, Model
from .propositions import Proposition, sample_refinement
from .report import Report
from .states import is_pure, probability, random_state
from .symmetry import METRIC_C, dimension_table, state_parameter_count
from .tomography import informationally_complete_set, joint_probability_table, reconstruct_joint
from .zeno import (
    delta_closed_form,
    estimate_delta,
    preparation_tolerance_check,
    qubit_path,
    scaling_check,
    zeno_closed_form,
    zeno_limit,
)


class UsageError(Exception):
    pass


# Expected classifier outcome per label.
EXPECTED_STATUS = {
    "classical": STATUS_ADMISSIBLE,
    "semi-classical": STATUS_ADMISSIBLE,
    "quantum": STATUS_SMOOTH,
    "real-pair-orthogonal": STATUS_CONVEXITY,
    "higher-order": STATUS_HIGHER,
}

# Constraint verdicts for the concrete theories at (2, 2).
EXPECTED_KNOWN = {
    "classical": ("satisfied", "saturated"),
    "quantum-complex": ("saturated", "saturated"),
    "quantum-real": ("satisfied", "violated"),
    "quaternionic": ("violated", "strict"),
}


def _config(args, **extra) -> dict:
    cfg = {"seed": args.seed, "tolerance": args.tolerance, "dmax": args.dmax, "version": __version__}
    cfg.update(extra)
    return cfg


# -- verify ------------------------------------------------------------------


def cmd_verify(args) -> Report:
    if args.dim < 1:
        raise UsageError("--dim must be at least 1")
    kind = Kind(args.model)
    if not kind.constructible:
        raise UsageError("quaternionic models support the classify/counterexamples commands only")
    model = Model(kind, args.dim)
    rep = Report("verify", _config(args, model=kind.value, dim=args.dim, trials=args.trials))
    for law in LAWS:
        if kind not in law.kinds:
            continue
        r = run_law(law.name, model, args.trials, args.seed, args.tolerance)
        rep.add(f"{law.suite}.{law.name}", law.anchor, {"trials": r.trials},
                {"max_deviation_at_most": args.tolerance, "failures": 0},
                {"max_deviation": r.max_deviation, "failures": r.failures}, r.failures == 0)

    table = dimension_table(kind, args.dmax)
    bad = table.inconsistencies()
    rep.add("symmetry.dimension_identities", "parameter rule; homogeneous-space dimensions",
            {"dmax": args.dmax}, [], bad, not bad)

    if kind.is_quantum and args.dim >= 2:
        psi = entangled_witness_state(args.dim, 2, kind)
        cm = CompositeModel(model, Model(kind, 2))
        purity = marginal_purity(psi, cm)
        rep.add("composition.entangled_witness", "entangled pure states",
                {"d_A": args.dim, "d_B": 2}, {"pure": True, "marginal_purity_below": 1.0},
                {"pure": is_pure(psi), "marginal_purity": purity}, is_pure(psi) and purity < 1 - 1e-9)
        gap = entanglement_dim_gap(args.dim, 2, kind)
        rep.add("composition.entanglement_dim_gap", "entanglement dimension gap",
                {"d_A": args.dim, "d_B": 2}, {"greater_than": 0}, gap, gap > 0)
    return rep


# -- classify / counterexamples --------------------------------------------------


def _known_rows(rep: Report):
    for row in known_theory_report():
        kind = row["kind"]
        comp, red = row["composition"], row["reductionism"]
        want = EXPECTED_KNOWN[kind]
        observed = {
            "S(2)": row["S(2)"], "S(4)": row["S(4)"], "dimG(2)": row["dimG(2)"], "dimG(4)": row["dimG(4)"],
            "composition": [comp["lhs"], comp["relation"], comp["rhs"], comp["status"]],
            "reductionism": [red["lhs"], red["relation"], red["rhs"], red["status"]],
        }
        for branch, sub in comp.get("sub", {}).items():
            observed[f"composition.{branch}"] = [sub["lhs"], sub["relation"], sub["rhs"], sub["status"]]
        rep.add(f"known.{kind}", "composition and reductionism constraints",
                {"d_A": 2, "d_B": 2}, {"composition": want[0], "reductionism": want[1]}, observed,
                (comp["status"], red["status"]) == want)


def cmd_classify(args) -> Report:
    if args.mu_max < 1:
        raise UsageError("--mu-max must be at least 1")
    rep = Report("classify", _config(args, mu_max=args.mu_max))
    scanned = scan_candidates(args.mu_max, args.dmax)
    kept = [v for v in scanned if v.status != STATUS_INCONSISTENT]
    for v in kept:
        c = v.candidate
        want = EXPECTED_STATUS.get(c.label, "unlabeled")
        rep.add(f"candidate.mu{c.mu}.g{c.dim_g1}.x{c.dim_x2}", "theory-candidate classification",
                {"mu": c.mu, "dim_g1": c.dim_g1, "dim_x2": c.dim_x2},
                {"label": c.label, "status": want},
                {"group": c.group_name, "status": v.status, "note": v.note,
                 "checks": {k: ch.status for k, ch in sorted(v.checks.items())}},
                v.status == want)
    rep.add("candidates.rejected_inconsistent", "theory-candidate classification",
            {"grid_size": len(scanned)}, {"consistent": len(kept)},
            {"rejected": len(scanned) - len(kept)}, "pass")
    smooth = [v.candidate.label for v in kept if v.status == STATUS_SMOOTH]
    rep.add("candidates.unique_smooth", "smooth admissibility",
            {"mu_max": args.mu_max}, ["quantum"], smooth,
            smooth == ["quantum"] if args.mu_max >= 2 else "skipped")
    rep.add("candidates.quantum_matches_unitary", "plumbing", {"d_max": 12}, True,
            quantum_matches_unitary(12), quantum_matches_unitary(12))
    _known_rows(rep)
    return rep


def cmd_counterexamples(args) -> Report:
    rep = Report("counterexamples", _config(args))
    _known_rows(rep)
    return rep


# -- zeno ------------------------------------------------------------------------


def cmd_zeno(args) -> Report:
    if not args.eps:
        raise UsageError("--eps needs at least one value")
    if any(not 0 < e < 1 for e in args.eps) or any(n < 1 for n in args.N):
        raise UsageError("eps values must lie in (0, 1) and N values must be positive")
    if args.dim < 2:
        raise UsageError("--dim must be at least 2")
    eps_grid = sorted(set(args.eps))
    n_list = sorted(set(args.N))
    rep = Report("zeno", _config(args, eps=eps_grid, N=n_list, dim=args.dim, c_delta=args.c_delta))

    deltas = {}
    for eps in eps_grid:
        est = estimate_delta(eps, args.dim, args.seed)
        exact = delta_closed_form(eps)
        deltas[eps] = est
        rel = abs(est - exact) / exact
        rep.add(f"zeno.delta.eps={eps:g}", "continuity radius delta(eps)",
                {"eps": eps, "dim": args.dim}, {"closed_form": exact, "relative_error_at_most": 0.05},
                {"estimate": est, "relative_error": rel}, rel <= 0.05)
    vals = [deltas[e] for e in eps_grid]
    rep.add("zeno.delta.monotone", "continuity radius delta(eps)", {"eps": eps_grid},
            "nondecreasing", vals, all(b >= a for a, b in zip(vals, vals[1:])))

    for eps in eps_grid:
        for n in n_list:
            name = f"zeno.scaling.eps={eps:g}.N={n}"
            if n * eps >= 0.1:
                rep.add(name, "sqrt(N) scaling of delta", {"eps": eps, "N": n},
                        "N*eps < 0.1", None, "skipped")
                continue
            ratio = scaling_check(eps, n, args.dim, args.seed)
            rep.add(name, "sqrt(N) scaling of delta", {"eps": eps, "N": n, "dim": args.dim},
                    {"ratio_in": [0.9, 1.1]}, ratio, 0.9 <= ratio <= 1.1)

    rng = np.random.default_rng(args.seed)
    m = Model(Kind.QUANTUM_COMPLEX, args.dim)
    eps0 = eps_grid[0]
    ray_deltas = [estimate_delta(eps0, args.dim, args.seed,
                                 e0=sample_refinement(Proposition.top(m), 1, rng)) for _ in range(5)]
    spread = (max(ray_deltas) - min(ray_deltas)) / min(ray_deltas)
    rep.add("zeno.delta.base_ray_independence", "base-ray independence of delta(eps)", {"eps": eps0, "rays": 5},
            {"relative_spread_at_most": 0.05}, {"deltas": ray_deltas, "relative_spread": spread}, spread <= 0.05)

    products = zeno_limit(qubit_path(), args.c_delta / METRIC_C, n_list)
    for n in n_list:
        exact = zeno_closed_form(args.c_delta, n)
        rep.add(f"zeno.limit.N={n}", "Zeno limit",
                {"c_delta": args.c_delta, "N": n}, exact, products[n], abs(products[n] - exact) <= 1e-12)
    seq = [products[n] for n in n_list]
    rep.add("zeno.limit.monotone", "Zeno limit", {"N": n_list},
            "nondecreasing", seq, all(b >= a for a, b in zip(seq, seq[1:])))
    for n in n_list:
        if 2 * n in products:
            ratio = (1 - products[n]) / (1 - products[2 * n])
            rep.add(f"zeno.limit.halving.N={n}", "Zeno limit",
                    {"N": n, "2N": 2 * n}, {"ratio": 2.0, "relative_tolerance": 0.05}, ratio,
                    abs(ratio - 2) <= 0.1)

    for n in n_list:
        if n > 16:
            continue
        v = preparation_tolerance_check(Proposition.basis_ray(m, 0), eps0, n, args.seed)
        ok = v.ok and (v.factorization_error is None or v.factorization_error <= 1e-12)
        rep.add(f"zeno.preparation_tolerance.N={n}", "preparation tolerance",
                {"eps": eps0, "N": n, "dim": args.dim},
                {"product_at_least": v.threshold},
                {"product": v.product, "radius": float(v.radius), "factorization_error": v.factorization_error},
                ok)
    return rep


# -- tomography ---------------------------------------------------------------------


def cmd_tomography(args) -> Report:
    if args.dA < 1 or args.dB < 1 or args.trials < 1 or args.pairs < 1:
        raise UsageError("--dA, --dB, --trials and --pairs must all be positive")
    kind = Kind(args.kind)
    if not kind.constructible:
        raise UsageError("no state-level tomography for quaternionic models")
    rep = Report("tomography", _config(args, dA=args.dA, dB=args.dB, kind=kind.value,
                                       trials=args.trials, pairs=args.pairs))
    ma, mb = Model(kind, args.dA), Model(kind, args.dB)
    cm = CompositeModel(ma, mb)
    ic_a, ic_b = informationally_complete_set(ma), informationally_complete_set(mb)
    rep.add("tomography.ic_sizes", "informationally complete sets",
            {"d_A": args.dA, "d_B": args.dB},
            {"A": state_parameter_count(kind, args.dA), "B": state_parameter_count(kind, args.dB),
             "sigma_min_above": 1e-8},
            {"A": len(ic_a), "B": len(ic_b), "sigma_min_A": ic_a.smallest_singular_value(),
             "sigma_min_B": ic_b.smallest_singular_value()},
            len(ic_a) == state_parameter_count(kind, args.dA) and len(ic_b) == state_parameter_count(kind, args.dB)
            and min(ic_a.smallest_singular_value(), ic_b.smallest_singular_value()) > 1e-8)

    rng = np.random.default_rng(args.seed)
    worst = agree = 0.0
    for _ in range(args.trials):
        rho = random_state(cm.model, pure=False, seed=rng)
        q = reconstruct_joint(joint_probability_table(rho, ic_a, ic_b))
        for _ in range(args.pairs):
            x = sample_refinement(Proposition.top(ma), int(rng.integers(1, args.dA + 1)), rng)
            y = sample_refinement(Proposition.top(mb), int(rng.integers(1, args.dB + 1)), rng)
            direct = probability(rho, tensor_proposition(x, y))
            chained = q(x, y)
            worst = max(worst, abs(chained - direct))
            agree = max(agree, abs(chained - q.linear(x, y)))
    bound = 1e-12 if kind is Kind.CLASSICAL else 1e-8
    rep.add("tomography.round_trip", "local tomography",
            {"trials": args.trials, "pairs": args.pairs}, {"max_error_at_most": bound},
            {"max_error": worst}, worst <= bound)
    rep.add("tomography.chain_vs_linear", "local tomography",
            {"trials": args.trials, "pairs": args.pairs}, {"max_difference_at_most": bound},
            {"max_difference": agree}, agree <= bound)
    if kind.is_quantum and args.dA >= 2 and args.dB >= 2:
        bell = entangled_witness_state(args.dA, args.dB, kind)
        q = reconstruct_joint(joint_probability_table(bell, ic_a, ic_b))
        plus_a = Proposition.ray(ma, np.eye(args.dA)[0] + np.eye(args.dA)[1])
        plus_b = Proposition.ray(mb, np.eye(args.dB)[0] + np.eye(args.dB)[1])
        got = q(plus_a, plus_b)
        want = probability(bell, tensor_proposition(plus_a, plus_b))
        rep.add("tomography.entangled_plus_plus", "local tomography",
                {"state": "maximally correlated"}, want, got, abs(got - want) <= bound)
    return rep


COMMANDS = {
    "verify": cmd_verify,
    "classify": cmd_classify,
    "counterexamples": cmd_counterexamples,
    "zeno": cmd_zeno,
    "tomography": cmd_tomography,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--dmax", type=int, default=8)
    common.add_argument("--format", choices=("json", "md"), default="json")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")

    p = argparse.ArgumentParser(prog="probworkbench", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="randomized law suites for one model")
    v.add_argument("--model", choices=[k.value for k in Kind], default="quantum-complex")
    v.add_argument("--dim", type=int, default=2)
    v.add_argument("--trials", type=int, default=100)

    c = sub.add_parser("classify", parents=[common], help="theory-candidate admissibility table")
    c.add_argument("--mu-max", dest="mu_max", type=int, default=3)

    sub.add_parser("counterexamples", parents=[common], help="real and quaternionic counterexample rows")

    z = sub.add_parser("zeno", parents=[common], help="continuity radius, scaling and Zeno limit")
    z.add_argument("--eps", type=float, nargs="*", default=[1e-4, 4e-4, 1e-2])
    z.add_argument("--N", type=int, nargs="+", default=[1, 2, 4, 9, 10, 16, 100, 200])
    z.add_argument("--dim", type=int, default=2)
    z.add_argument("--c-delta", dest="c_delta", type=float, default=0.5)

    t = sub.add_parser("tomography", parents=[common], help="local-tomography round trip")
    t.add_argument("--dA", type=int, default=2)
    t.add_argument("--dB", type=int, default=2)
    t.add_argument("--kind", choices=[k.value for k in Kind], default="quantum-complex")
    t.add_argument("--trials", type=int, default=100)
    t.add_argument("--pairs", type=int, default=100)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.dmax < 4:
        parser.error("--dmax must be at least 4")
    try:
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    text = report.to_json() if args.format == "json" else report.to_markdown()
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
