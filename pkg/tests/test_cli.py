import json
import subprocess
import sys
from pathlib import Path

import pytest

from boolult.cli import main

SCEN = Path(__file__).resolve().parents[1] / "demos" / "scenarios"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, (json.loads(out) if out else None), err


def test_eval_check_in_v(capsys):
    code, rep, _ = run_json(capsys, "eval", "--scenario", str(SCEN / "check_in_v.json"))
    assert code == 0 and rep["ok"]
    assert rep["results"][0]["value"]["is_one"]
    assert rep["results"][1]["value"]["is_one"]
    assert rep["universe_size"] > 0 and rep["schema"] == "boolult.report/1"


def test_eval_law_violation_warns(capsys):
    code, rep, _ = run_json(capsys, "eval", "--scenario", str(SCEN / "law_violation.json"))
    assert code == 1 and not rep["ok"]
    assert set(rep["laws"]["failed"]) == {"symmetry", "congruence[P]"}
    assert "symmetry fails" in rep["warnings"]
    # values are still reported
    assert len(rep["results"]) == 2


def test_ultrapower_verdict(capsys):
    code, rep, _ = run_json(capsys, "ultrapower", "--scenario", str(SCEN / "two_atoms.json"),
                            "--samples", "40")
    assert code == 0
    (u,) = rep["ultrafilters"]
    assert u["verdict"] == "trivial ultrapower (generic)"
    assert u["degree_of_genericity"]["degree"] == "none: trivial ultrapower"
    assert u["los"]["ok"] and u["los_relativized"]["ok"] and u["fiber"]["ok"]
    assert u["direct_limit"]["ok"] and u["extender_round_trips"]["ok"]
    assert rep["formulas"]["sampled"] == 40


def test_ultrapower_on_poset(capsys):
    code, rep, _ = run_json(capsys, "ultrapower", "--scenario", str(SCEN / "poset_fork.json"),
                            "--samples", "10")
    assert code == 0
    assert all(d["consistent"] for d in rep["poset"]["maximal_filters"])


def test_demo_omega(capsys):
    code, rep, _ = run_json(capsys, "demo-omega")
    assert code == 0
    assert rep["illfoundedness"]["depth"] == 10
    assert len(rep["illfoundedness"]["chain"]) == 11
    assert rep["rectangle"]["both_met"] == 1000


def test_demo_omega_no_samples(capsys):
    code, rep, _ = run_json(capsys, "demo-omega", "--samples", "0")
    assert code == 0
    assert rep["rectangle"]["notice"] == "rectangle demo skipped: samples=0"


def test_text_output(capsys):
    code, out, _ = run(capsys, "demo-omega", "--depth", "3", "--samples", "5")
    assert code == 0 and out.startswith("demo-omega: PASS")


@pytest.mark.parametrize("argv,code", [
    (["eval", "--scenario", str(SCEN / "bad_formula.json")], 2),
    (["eval", "--scenario", str(SCEN / "missing.json")], 2),
    (["eval", "--scenario", str(SCEN / "too_big.json")], 3),
    (["eval", "--scenario", str(SCEN / "two_atoms.json"), "--max-atoms", "1"], 3),
    (["demo-omega", "--depth", "0"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code and out == "" and err


def test_console_script_is_deterministic():
    cmd = [sys.executable, "-m", "boolult.cli", "ultrapower", "--scenario", str(SCEN / "two_atoms.json"),
           "--format", "json", "--samples", "20", "--seed", "3"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["ok"]
