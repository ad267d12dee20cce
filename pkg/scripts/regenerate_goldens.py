"""Rewrite tests/golden/*.json from the CLI at its default seed.

Run after an intentional change to a report; review the diff before committing.
"""

import contextlib
import io
import sys
from pathlib import Path

from probworkbench.cli import main

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"

RUNS = {
    "verify_quantum_complex_d2": ["verify", "--model", "quantum-complex", "--dim", "2", "--trials", "50"],
    "verify_classical_d3": ["verify", "--model", "classical", "--dim", "3", "--trials", "50"],
    "classify": ["classify"],
    "counterexamples": ["counterexamples"],
    "zeno": ["zeno", "--eps", "1e-4", "4e-4", "--N", "1", "4", "10", "100", "200"],
    "tomography": ["tomography", "--trials", "10", "--pairs", "10"],
}


def run(argv) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


if __name__ == "__main__":
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in RUNS.items():
        code, text = run(argv)
        (GOLDEN / f"{name}.json").write_text(text)
        print(f"{name}: exit {code}", file=sys.stderr)
