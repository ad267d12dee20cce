"""Write every CLI report (JSON and markdown) into one directory.

    python scripts/run_all_reports.py --out reports/ --seed 0
"""

import argparse
import contextlib
import io
import sys
from pathlib import Path

from probworkbench.cli import main as cli_main

RUNS = {
    "verify_classical": ["verify", "--model", "classical", "--dim", "4"],
    "verify_real": ["verify", "--model", "quantum-real", "--dim", "4"],
    "verify_complex": ["verify", "--model", "quantum-complex", "--dim", "4"],
    "classify": ["classify"],
    "counterexamples": ["counterexamples"],
    "zeno": ["zeno"],
    "tomography": ["tomography"],
    "tomography_qubit_qutrit": ["tomography", "--dA", "2", "--dB", "3"],
}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=Path("reports"))
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name, argv in RUNS.items():
        for fmt in ("json", "md"):
            target = args.out / f"{name}.{fmt}"
            with contextlib.redirect_stdout(io.StringIO()):
                code = cli_main([*argv, "--seed", str(args.seed), "--format", fmt, "--out", str(target)])
        worst = max(worst, code)
        print(f"{name:<26} exit {code}  -> {target.with_suffix('.json')}")
    sys.exit(worst)


if __name__ == "__main__":
    main()
