import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from omac.adversary import adaptive_prefix_adversary
from omac.cli import main
from omac.families import gen_det_lb
from omac.online import BP

F = Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.fixture
def det_file(tmp_path, capsys):
    path = tmp_path / "det.json"
    assert run(capsys, "gen", "--family", "det_lb", "--epsilon", "1/10", "-o", str(path))[0] == 0
    return path


def test_gen_writes_instance_and_sidecar(det_file):
    meta = json.loads((det_file.parent / "det.json.meta.json").read_text())
    assert meta["argv"][:2] == ["gen", "--family"]
    assert json.loads(det_file.read_text())["family"]["n"] == "51"


def test_run_bp_cr_matches_adversary(capsys, det_file):
    code, out, _ = run(capsys, "run", "--alg", "bp", "-i", str(det_file), "--cr")
    assert code == 0
    report = json.loads(out)
    i, cr = adaptive_prefix_adversary(BP, gen_det_lb(F(1, 10)))
    assert report["worst_prefix"]["i"] == i
    assert F(report["worst_prefix"]["cr"]["exact"]) == cr


def test_run_omac_is_the_average(capsys, det_file):
    utils = {}
    for alg in ("bp", "max", "omac"):
        code, out, _ = run(capsys, "run", "--alg", alg, "-i", str(det_file))
        assert code == 0
        utils[alg] = F(json.loads(out)["expected_utility"]["exact"])
    assert utils["omac"] == (utils["bp"] + utils["max"]) / 2


def test_cr_and_opt_commands(capsys, det_file):
    code, out, _ = run(capsys, "cr", "--alg", "max", "-i", str(det_file))
    assert code == 0 and "worst_prefix" in json.loads(out)
    code, out, _ = run(capsys, "opt", "-i", str(det_file))
    report = json.loads(out)
    assert code == 0 and F(report["opt"]["exact"]) == F(1, 400)
    assert report["opt_set"] == list(range(2, 52))


def test_oks_file_is_reduced(tmp_path, capsys):
    path = tmp_path / "oks.json"
    run(capsys, "gen", "--family", "knapsack_lb_items", "--beta", "1/2", "--epsilon", "1/10", "-o", str(path))
    code, out, _ = run(capsys, "run", "--alg", "oks-beta", "-i", str(path), "--cr")
    assert code == 0 and F(json.loads(out)["cr"]["exact"]) <= F(1, 4) + 10 * F(1, 10)


def test_input_errors_exit_2(tmp_path, capsys):
    xos = tmp_path / "xos.json"
    run(capsys, "gen", "--family", "xos", "--n", "2", "--m", "2", "--epsilon", "1/10", "-o", str(xos))
    assert run(capsys, "run", "--alg", "oks-beta", "--beta", "1/2", "-i", str(xos))[0] == 2
    assert run(capsys, "run", "--alg", "bp", "-i", str(xos))[0] == 2
    assert run(capsys, "gen", "--family", "det_lb")[0] == 2
    assert run(capsys, "run", "--alg", "bp", "-i", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(xos.read_text().replace('"cost": "1/10"', '"cost": "1/0"', 1))
    code, _, err = run(capsys, "opt", "-i", str(bad))
    assert code == 2 and "bad.json:" in err
    with pytest.raises(SystemExit) as exit_:
        main(["gen", "--family", "det_lb", "--epsilon", "0.1"])
    assert exit_.value.code == 2


def test_cap_exceeded_is_an_input_error(tmp_path, capsys):
    path = tmp_path / "big.json"
    run(capsys, "gen", "--family", "random", "--n", "12", "--seed", "3", "-o", str(path))
    assert run(capsys, "opt", "-i", str(path), "--cap", "2")[0] == 2


def test_sweep_det_lb(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "det_lb", "--epsilon", "1/5,1/10,1/20")
    assert code == 0
    table = rows(out)
    assert [r["epsilon"] for r in table] == ["1/5", "1/10", "1/20"]
    for r in table:
        eps = F(r["epsilon"])
        assert r["status"] == "ok"
        assert F(r["bp_worst_cr"]) == 0
        exact = 4 * eps * (1 - eps**2)
        if eps != F(1, 5):  # 1/(2 eps^2) is an integer here
            assert F(r["max_worst_cr"]) == exact
        assert abs(F(r["max_worst_cr"]) - exact) < eps**2


def test_sweep_rand_ub(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "rand_ub", "--epsilon", "1/10,1/20")
    for r in rows(out):
        eps = F(r["epsilon"])
        assert F(1, 2) <= F(r["omac_cr"]) <= F(1, 2) + 10 * eps


def test_sweep_empty_grid(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "det_lb", "--epsilon", "")
    assert code == 0
    assert out.strip().startswith("family,epsilon") and len(out.strip().splitlines()) == 1


def test_sweep_marks_capped_rows(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "no_preempt", "--n", "3,30",
                       "--epsilon", "1/10", "--q", "1", "--cap", "8")
    assert code == 0
    assert [r["status"] for r in rows(out)] == ["ok", "cap_exceeded"]


def test_suite_filter(capsys, tmp_path):
    out_file = tmp_path / "suite.json"
    code, out, _ = run(capsys, "suite", "--acceptance", "--filter", "xos", "-o", str(out_file))
    assert code == 0
    assert "[PASS] criterion 6" in out and "criterion 1:" not in out
    assert [r["criterion"] for r in json.loads(out_file.read_text())] == [6]
    assert run(capsys, "suite", "--filter", "nothing")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "omac", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "0.1.0" in proc.stdout
