import json
import subprocess
import sys

import pytest

from stochsteiner.cli import main
from stochsteiner.fixtures import fixture_text


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_fig1(capsys):
    code, out, _ = run(["solve", "--formulation", "sdc2", "fig1.sstp"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["objective"] == 3.0 and doc["bound_type"] == "integer_optimum"
    assert "wall_time" not in doc


def test_relax_dc1_relaxed_first_stage(capsys):
    code, out, _ = run(["relax", "--formulation", "dc1", "--relax-first-stage", "fig3.rsstp"], capsys)
    assert code == 0
    assert json.loads(out)["objective"] == 4.5


def test_relax_is_lp_bound(capsys):
    code, out, _ = run(["relax", "-f", "uc", "fig4"], capsys)
    doc = json.loads(out)
    assert doc["objective"] == 1.5 and doc["bound_type"] == "lp_relaxation"


def test_report_is_byte_identical(tmp_path, capsys):
    path = tmp_path / "fig2.sstp"
    path.write_text(fixture_text("fig2"))
    a = run(["solve", "-f", "sdc1", str(path), "--seed", "4"], capsys)[1]
    b = run(["solve", "-f", "sdc1", str(path), "--seed", "4"], capsys)[1]
    assert a == b


def test_timing_flag_adds_wall_time(capsys):
    doc = json.loads(run(["solve", "-f", "uc", "fig1", "--timing"], capsys)[1])
    assert doc["wall_time"] >= 0


def test_out_and_dump_lp(tmp_path, capsys):
    out, lp = tmp_path / "r.json", tmp_path / "m.lp"
    code, stdout, _ = run(["solve", "-f", "dc2", "fig1_rooted", "--out", str(out), "--dump-lp", str(lp),
                           "--with-valid-inequalities", "--objective", "rewritten"], capsys)
    assert code == 0 and stdout == ""
    doc = json.loads(out.read_text())
    assert doc["objective"] == 12.0 and doc["formulation"] == "dc2star+vi"
    assert lp.read_text().startswith("Minimize")


def test_rooted_flag_with_explicit_root(capsys):
    code, out, _ = run(["solve", "-f", "dc2", "fig1", "--rooted", "--root", "1"], capsys)
    assert code == 0 and json.loads(out)["objective"] == 12.0


@pytest.mark.parametrize("argv", [
    ["solve", "-f", "dc2", "fig1"],
    ["solve", "-f", "uc", "fig1", "--rooted", "--root", "1"],
    ["solve", "-f", "uc", "missing-file.sstp"],
])
def test_bad_usage_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--formulation", "bogus", "fig1"])
    assert exc.value.code == 2


def test_bad_instance_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.sstp"
    bad.write_text("SECTION Graph\nNodes 2\n")
    code, _, err = run(["solve", "-f", "uc", str(bad)], capsys)
    assert code == 2 and "line" in err


def test_solver_failure_exit_1(tmp_path, capsys):
    code, _, _ = run(["solve", "-f", "uc", "fig2", "--node-limit", "0"], capsys)
    assert code == 1


def test_compare(capsys):
    code, out, _ = run(["compare", "fig4", "--perturbations", "2"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("formulation\tlp")
    assert any(line.startswith("sdc1\t2.000000000") for line in lines)
    code, out, _ = run(["compare", "fig3", "--format", "json", "--perturbations", "1", "--integer"], capsys)
    doc = json.loads(out)
    assert doc["flags"] == [] and doc["formulations"]["df"]["ip"] == 5.0


def test_verify_paper(capsys):
    code, out, _ = run(["verify-paper"], capsys)
    assert code == 0
    assert out.count("PASS") == 9 and "FAIL" not in out


def test_gen(tmp_path, capsys):
    path = tmp_path / "g.sstp"
    assert main(["gen", "--seed", "5", "--vertices", "5", "--rooted", "--out", str(path)]) == 0
    code, out, _ = run(["solve", "-f", "df", str(path)], capsys)
    assert code == 0 and json.loads(out)["status"] == "optimal"


def test_console_module_entry():
    res = subprocess.run([sys.executable, "-m", "stochsteiner.cli", "solve", "-f", "uc", "fig1"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["objective"] == 3.0
