import json
import subprocess
import sys

import pytest

from chevloc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_roots_g2(capsys):
    code, rep, _ = run(capsys, "roots", "--system", "G2", "--alpha", "[1,0]")
    assert code == 0 and rep["schema"] == 1
    assert rep["root_count"] == 12
    (row,) = rep["alphas"]
    assert len(row["b_set"]) == 5 and row["full_deletion"]


def test_roots_a2_rule1(capsys):
    code, rep, _ = run(capsys, "roots", "--system", "A2", "--alpha", "[1,0]")
    assert code == 0
    assert all(t["rule"] == 1 for t in rep["alphas"][0]["trace"])


def test_invalid_root_is_usage_error(capsys):
    code, rep, err = run(capsys, "roots", "--system", "A2", "--alpha", "[2,0]")
    assert code == 2 and rep is None and "not a root" in err


def test_refusal(capsys):
    code, rep, _ = run(capsys, "check", "--system", "B2", "--ring", "zmod:4")
    assert code == 2 and "1/2" in rep["refused"]


def test_unknown_suite(capsys):
    code, _, _ = run(capsys, "check", "--system", "A2", "--ring", "gf:2", "--suites", "nope")
    assert code == 2


def test_sandwich_suite_reports_middle(capsys):
    code, rep, _ = run(capsys, "check", "--system", "A2", "--ring", "gf:2", "--suites", "sandwich")
    assert code == 0
    s = rep["suites"]["sandwich"]
    assert s["status"] == "pass" and s["group_order"] == 168
    assert all(r["middle"] == 1 for r in s["roots"].values())


def test_capped_suite_is_skipped(capsys):
    code, rep, _ = run(capsys, "check", "--system", "A2", "--ring", "gf:3", "--suites", "sandwich", "--cap", "100")
    assert code == 0
    assert rep["suites"]["sandwich"]["status"] == "skipped (capped)"


def test_decompose(capsys):
    code, rep, _ = run(capsys, "decompose", "--system", "A2", "--ring", "gf:3", "--word", "x[0,-1](1) * x[1,0](2)")
    assert code == 0 and rep["recomposes"]
    assert set(rep["form"]) == {"u", "h", "v", "u2"}


def test_decompose_empty_word(capsys):
    code, rep, _ = run(capsys, "decompose", "--system", "A2", "--ring", "gf:3")
    assert code == 0
    assert rep["form"] == {"u": ["0"] * 3, "h": ["1"] * 2, "v": ["0"] * 3, "u2": ["0"] * 3}


def test_decompose_non_unit_torus(capsys):
    code, _, err = run(capsys, "decompose", "--system", "A2", "--ring", "gf:3", "--word", "h[1,0](0)")
    assert code == 2 and "not a unit" in err


def test_interp_ring(capsys):
    code, rep, _ = run(capsys, "interp", "--system", "A2", "--ring", "gf:2", "--direction", "ring")
    assert code == 0 and rep["result"]["status"] == "pass"


def test_interp_unknown_direction(capsys):
    with pytest.raises(SystemExit) as e:
        main(["interp", "--system", "A2", "--ring", "gf:2", "--direction", "sideways"])
    assert e.value.code == 2


def test_bad_ring_is_usage_error(capsys):
    code, _, _ = run(capsys, "check", "--system", "A2", "--ring", "gf:6")
    assert code == 2


def test_deterministic_output_and_out_file(tmp_path):
    args = ["check", "--system", "A2", "--ring", "gf:2", "--suites", "roots,gauss,ej,params", "--words", "50", "--seed", "4"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "chevloc", "roots", "--system", "A2"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["passed"]
