import contextlib
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from probworkbench.cli import main

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "scripts"))
from regenerate_goldens import RUNS  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"
EXACT = {"classify", "counterexamples"}


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def run_module(*args):
    return subprocess.run([sys.executable, "-m", "probworkbench", *args], capture_output=True, text=True)


def assert_close(got, want, path="$"):
    """Structural equality; floats compared at 1e-9 absolute to absorb BLAS differences."""
    if isinstance(want, float) or isinstance(got, float):
        assert got == pytest.approx(want, abs=1e-9), path
    elif isinstance(want, dict):
        assert isinstance(got, dict) and got.keys() == want.keys(), path
        for k in want:
            assert_close(got[k], want[k], f"{path}.{k}")
    elif isinstance(want, list):
        assert isinstance(got, list) and len(got) == len(want), path
        for i, (g, w) in enumerate(zip(got, want)):
            assert_close(g, w, f"{path}[{i}]")
    else:
        assert got == want, path


@pytest.mark.parametrize("name", sorted(RUNS))
def test_golden(name):
    code, text = run(RUNS[name])
    assert code == 0
    want = (GOLDEN / f"{name}.json").read_text()
    if name in EXACT:
        assert text == want
    else:
        assert_close(json.loads(text), json.loads(want))


@pytest.mark.parametrize("name", sorted(RUNS))
def test_byte_identical_reruns(name):
    assert run(RUNS[name])[1] == run(RUNS[name])[1]


def test_schema():
    code, text = run(["counterexamples"])
    doc = json.loads(text)
    assert set(doc) == {"command", "config", "checks", "summary"}
    assert doc["config"]["seed"] == 0 and doc["config"]["tolerance"] == 1e-9 and doc["config"]["dmax"] == 8
    for c in doc["checks"]:
        assert set(c) == {"name", "paper_anchor", "inputs", "expected", "observed", "status"}
        assert c["paper_anchor"] and c["status"] in {"pass", "fail", "skipped"}
    names = [c["name"] for c in doc["checks"]]
    assert names == sorted(names)
    assert doc["summary"]["total"] == len(names)


def test_verify_spec_example():
    code, text = run(["verify", "--model", "quantum-complex", "--dim", "4", "--seed", "7"])
    doc = json.loads(text)
    assert code == 0 and doc["summary"]["fail"] == 0 and doc["config"]["seed"] == 7


def test_classify_marks_quantum_unique():
    doc = json.loads(run(["classify"])[1])
    checks = {c["name"]: c for c in doc["checks"]}
    assert checks["candidates.unique_smooth"]["observed"] == ["quantum"]
    assert checks["known.quantum-real"]["observed"]["reductionism"][-1] == "violated"
    assert checks["known.quaternionic"]["observed"]["composition"][-1] == "violated"


def test_zeno_scaling_passes():
    doc = json.loads(run(["zeno", "--eps", "1e-4", "--N", "2", "4", "9", "16"])[1])
    ratios = [c for c in doc["checks"] if c["name"].startswith("zeno.scaling")]
    assert len(ratios) == 4 and all(c["status"] == "pass" for c in ratios)


def test_tomography_error_bound():
    code, text = run(["tomography", "--trials", "20", "--pairs", "20"])
    checks = {c["name"]: c for c in json.loads(text)["checks"]}
    assert code == 0 and checks["tomography.round_trip"]["observed"]["max_error"] < 1e-8


def test_markdown_and_out_file(tmp_path):
    out = tmp_path / "r.md"
    code, text = run(["counterexamples", "--format", "md", "--out", str(out)])
    assert code == 0 and text == ""
    body = out.read_text()
    assert body.startswith("# counterexamples") and "| known.quaternionic | pass |" in body


def test_failing_check_exits_one():
    # An impossible tolerance turns every nonzero deviation into a failure.
    code, text = run(["verify", "--model", "quantum-complex", "--dim", "3", "--trials", "5", "--tolerance", "-1"])
    assert code == 1 and json.loads(text)["summary"]["fail"] > 0


@pytest.mark.parametrize("argv", [
    ["verify", "--dim", "0"],
    ["verify", "--model", "quaternionic"],
    ["verify", "--model", "nonsense"],
    ["zeno", "--eps"],
    ["zeno", "--eps", "1.5"],
    ["classify", "--mu-max", "0"],
    ["tomography", "--dA", "0"],
    ["counterexamples", "--dmax", "2"],
    [],
])
def test_usage_errors_exit_two(argv):
    with pytest.raises(SystemExit) as exc, contextlib.redirect_stderr(io.StringIO()):
        main(argv)
    assert exc.value.code == 2


def test_module_entry_point():
    ok = run_module("counterexamples")
    assert ok.returncode == 0 and json.loads(ok.stdout)["command"] == "counterexamples"
    bad = run_module("verify", "--dim", "0")
    assert bad.returncode == 2 and "--dim" in bad.stderr
