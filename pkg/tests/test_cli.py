"""Golden-file and exit-code tests for the command-line interface."""
import json
import subprocess
import sys
from pathlib import Path

import pytest

from uprightknot.cli import main

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def in_golden(monkeypatch):
    monkeypatch.chdir(GOLDEN)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", ["unknot", "kink", "trefoil-a"])
def test_compute_golden(in_golden, capsys, name):
    code, out, _ = run(capsys, "compute", f"{name}.udf", "--invariant", "all", "--json", "--stable")
    assert code == 0
    assert out == (GOLDEN / f"compute_{name}.json").read_text()


def test_compute_unknot_records(in_golden, capsys):
    _, out, _ = run(capsys, "compute", "unknot.udf", "--json", "--stable")
    doc = json.loads(out)
    assert doc["delta"] == [[0, 1, 1]] and doc["rho1"] == [] and doc["theta"] == []


def test_compute_is_deterministic(in_golden, capsys):
    first = run(capsys, "compute", "trefoil-a.udf", "--json", "--stable")[1]
    second = run(capsys, "compute", "trefoil-a.udf", "--json", "--stable")[1]
    assert first == second


def test_compute_timings_only_without_stable(in_golden, capsys):
    doc = json.loads(run(capsys, "compute", "kink.udf", "--json")[1])
    assert set(doc["timing_ms"]) >= {"delta", "rho1", "theta", "total"}


def test_compute_single_invariant(in_golden, capsys):
    doc = json.loads(run(capsys, "compute", "trefoil-a.udf", "--invariant", "delta", "--json", "--stable")[1])
    assert "rho1" not in doc and "theta" not in doc
    assert doc["delta"] == [[-1, 1, 1], [0, -1, 1], [1, 1, 1]]


def test_compute_multiple_files_keep_order(in_golden, capsys):
    docs = json.loads(run(capsys, "compute", "trefoil-a.udf", "unknot.udf", "--json", "--stable")[1])
    assert [d["name"] for d in docs] == ["trefoil-a.udf", "unknot.udf"]


def test_compute_text_output(in_golden, capsys):
    code, out, _ = run(capsys, "compute", "kink.udf", "--stable")
    assert code == 0
    assert out.splitlines() == [
        "kink.udf: n=1 w=1 phi=1",
        "  delta = 1",
        "  rho1  = 0",
        "  theta = 0",
    ]


def test_malformed_input_exit_1(in_golden, capsys):
    code, _, err = run(capsys, "compute", "malformed.udf")
    assert code == 1
    assert "malformed.udf" in err and "line 2" in err


def test_invalid_input_exit_1(in_golden, capsys):
    code, _, err = run(capsys, "compute", "invalid.udf")
    assert code == 1
    assert "invalid.udf" in err and "line 3" in err and "outside" in err


def test_missing_file_exit_1(capsys, tmp_path):
    code, _, err = run(capsys, "compute", str(tmp_path / "nope.udf"))
    assert code == 1 and "nope.udf" in err


def test_internal_failure_exit_2(in_golden, capsys):
    code, _, err = run(capsys, "compute", "trefoil-a.udf", "--f2-exclude-diagonal")
    assert code == 2 and "NotDivisible" in err


def test_verify_golden(in_golden, capsys):
    code, out, _ = run(capsys, "verify", "kink.udf", "--json")
    assert code == 0
    assert out == (GOLDEN / "verify_kink.json").read_text()


def test_verify_unknot_and_catalog(in_golden, capsys):
    assert run(capsys, "verify", "unknot.udf")[0] == 0
    code, out, _ = run(capsys, "verify", "--catalog", "--no-kinks")
    assert code == 0 and "FAILED" not in out


def test_verify_rejected_convention_exit_3(in_golden, capsys):
    code, out, _ = run(capsys, "verify", "trefoil-a.udf", "--f2-exclude-diagonal", "--no-kinks")
    assert code == 3 and "laurent/theta" in out


def test_verify_needs_input(capsys):
    assert run(capsys, "verify")[0] == 1


def test_catalog_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and len(out.splitlines()) >= 6
    code, out, _ = run(capsys, "catalog", "show", "trefoil-a")
    assert code == 0 and out == (GOLDEN / "trefoil-a.udf").read_text()
    target = tmp_path / "u.udf"
    assert run(capsys, "catalog", "emit", "unknot", str(target))[0] == 0
    doc = json.loads(run(capsys, "compute", str(target), "--json", "--stable")[1])
    assert doc["delta"] == [[0, 1, 1]]
    assert run(capsys, "catalog", "show", "no-such-knot")[0] == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "uprightknot", "compute", "-", "--json", "--stable"],
        input="n 1\nc + 2 1\nphi 2 1\n", capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["theta"] == []
