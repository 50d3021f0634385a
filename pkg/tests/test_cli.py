import json
import subprocess
import sys

import pytest

from conftest import SIGNATURES
from cutoperad.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def sigfile(tmp_path):
    def write(name):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(SIGNATURES[name].to_json()))
        return str(p)
    return write


def test_eq(capsys):
    code, out, _ = run(capsys, "eq", "(h (v 1 2) (v 3 4))", "(v (h 1 3) (h 2 4))")
    assert (code, out) == (0, "equal\n")
    code, out, _ = run(capsys, "eq", "(h (h 1 2) 3)", "(h 1 (h 2 3))")
    assert (code, out) == (1, "not equal\n")


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "(v (h 1 3) (h 2 4))")
    assert (code, out) == (0, "(h (v 1 2) (v 3 4))\n")
    code, out, _ = run(capsys, "normalize", "--format", "json", "(h 1 2)")
    assert json.loads(out)["cut"]["gen"] == "h"


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--max", "4")
    assert code == 0
    assert [r["recurrence"] for r in json.loads(out)["rows"]] == [1, 2, 8, 39]
    code, out, _ = run(capsys, "count", "--max", "4", "--brute-force", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "arity,brute_force,recurrence,elements"
    assert out.splitlines()[4] == "4,39,39,936"


def test_count_with_signature(capsys, sigfile):
    code, out, _ = run(capsys, "count", "--sig", sigfile("d2_ht_v"), "--max", "5",
                       "--brute-force")
    assert code == 0 and json.loads(out)["pass"]


def test_enumerate(capsys):
    code, out, err = run(capsys, "enumerate", "--arity", "3")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 8
    assert all("cut" in json.loads(line) for line in lines)


def test_compose(capsys):
    code, out, _ = run(capsys, "compose", "(h 1 2)", "(h 1 2)", "1")
    assert (code, out) == (0, "(h (h 1 2) 3)\n")
    code, out, _ = run(capsys, "compose", "(h 1 2)", "(h 1 2)", "--at", "2")
    assert (code, out) == (0, "(h 1 (h 2 3))\n")
    code, _, _ = run(capsys, "compose", "(h 1 2)", "(h 1 2)")
    assert code == 2


def test_series(capsys):
    code, out, _ = run(capsys, "series", "invert", "[1, -2, 0, 1]", "--order", "6")
    assert json.loads(out)["inverse"] == [1, 2, 8, 39, 212, 1232]
    code, out, _ = run(capsys, "series", "dirichlet", "[1, -1, 0, 0]", "[1, -1, 0, 0]")
    assert json.loads(out)["product"] == [1, -2, 0, 1]
    code, out, _ = run(capsys, "series", "invert", "[1, 1]")
    assert json.loads(out)["inverse"] == [1, -1]
    code, out, _ = run(capsys, "series", "invert", "[0.5]")
    assert json.loads(out)["inverse"] == ["2"] or json.loads(out)["inverse"] == [2]
    code, out, _ = run(capsys, "series", "euler-check", "--max", "6")
    assert code == 0 and json.loads(out)["pass"]
    code, _, _ = run(capsys, "series", "invert", "not json")
    assert code == 2


def test_verify_resolution(capsys, sigfile):
    code, out, err = run(capsys, "verify-resolution", "--sig", sigfile("d2_hg_vu"),
                         "--max-arity", "3")
    assert code == 0 and json.loads(out)["pass"]
    assert "arity 3" in err


def test_assass(capsys, tmp_path):
    code, out, _ = run(capsys, "assass", "search", "--src", "(* (. 1 2) (. 3 4))",
                       "--dst", "(. (* 1 3) (* 2 4))")
    assert code == 0 and json.loads(out)["moves"] == 1
    code, out, _ = run(capsys, "assass", "search", "--src", "(. (* 1 2 3) (* 4 5 6))",
                       "--dst", "(. (* 1 2 3) (* 4 6 5))", "--budget", "5")
    assert code == 3 and json.loads(out)["status"] == "NOT_FOUND_WITHIN_BUDGET"


def test_render(capsys, tmp_path):
    out_file = tmp_path / "grid.svg"
    code, _, _ = run(capsys, "render", "(h (v 1 2) (v 3 4))", "--out", str(out_file))
    assert code == 0 and out_file.read_text().startswith("<svg")
    code, _, err = run(capsys, "render", "--sig", str(_d3(tmp_path)), "(h 1 2)")
    assert code == 2 and "d = 2" in err


def _d3(tmp_path):
    p = tmp_path / "d3.json"
    p.write_text(json.dumps(SIGNATURES["d3_binary"].to_json()))
    return p


def test_selftest_deterministic(capsys):
    a = run(capsys, "selftest", "--seed", "4", "--trials", "50")
    b = run(capsys, "selftest", "--seed", "4", "--trials", "50")
    assert a == b and a[0] == 0


@pytest.mark.parametrize("argv", [["eq", "(h 1", "(h 1 2)"], ["bogus"],
                                  ["count", "--max", "x"], ["--threads", "0", "count", "--max", "2"],
                                  ["normalize", "--sig", "/nonexistent.json", "(h 1 2)"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_parse_error_has_location(capsys):
    _, _, err = run(capsys, "normalize", "(h 1 (q 2 3))")
    assert "offset 6" in err


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("CUTOPERAD_BUDGET", "100")
    assert run(capsys, "enumerate", "--arity", "6")[0] == 3
    assert run(capsys, "count", "--max", "6", "--brute-force", "--budget", "100")[0] == 3


def test_console_script_module():
    res = subprocess.run([sys.executable, "-m", "cutoperad.cli", "eq", "(h 1 2)", "(h 1 2)"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "equal\n"
