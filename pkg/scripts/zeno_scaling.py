"""Tabulate delta(eps), the sqrt(N) scaling ratio and the chopped-path survival.

    python scripts/zeno_scaling.py --eps 1e-5 1e-4 1e-3 --N 2 4 9 16 --dim 2 3
"""

import argparse

from probworkbench.symmetry import METRIC_C
from probworkbench.zeno import (
    delta_closed_form,
    estimate_delta,
    qubit_path,
    scaling_check,
    zeno_closed_form,
    zeno_limit,
)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--eps", type=float, nargs="+", default=[1e-5, 1e-4, 1e-3])
    p.add_argument("--N", type=int, nargs="+", default=[2, 4, 9, 16])
    p.add_argument("--dim", type=int, nargs="+", default=[2, 3])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c-delta", type=float, default=0.5)
    args = p.parse_args()

    print("eps        d  delta_est     delta_exact   rel_err")
    for eps in args.eps:
        for d in args.dim:
            est = estimate_delta(eps, d, args.seed)
            exact = delta_closed_form(eps)
            print(f"{eps:<10.1e} {d}  {est:.9f}  {exact:.9f}  {abs(est - exact) / exact:.2e}")

    print("\neps        d  N    ratio")
    for eps in args.eps:
        for d in args.dim:
            for n in args.N:
                if n * eps < 0.1:
                    print(f"{eps:<10.1e} {d}  {n:<4} {scaling_check(eps, n, d, args.seed):.6f}")

    ns = sorted({1, 10, 100, 200, 1000, *args.N})
    sim = zeno_limit(qubit_path(), args.c_delta / METRIC_C, ns)
    print(f"\nc*delta = {args.c_delta}")
    print("N      simulated         closed form       N(1-p)")
    for n in ns:
        print(f"{n:<6} {sim[n]:.15f} {zeno_closed_form(args.c_delta, n):.15f} {n * (1 - sim[n]):.6f}")


if __name__ == "__main__":
    main()
