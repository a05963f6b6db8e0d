import csv
import json
import subprocess
import sys

import pytest

from otlab.cli import RunConfig, dumps, main

CUBIC = "-1,-1,0,1"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_classify_cubic(capsys):
    code, out = run(capsys, "classify", "--poly", CUBIC)
    assert code == 0 and out.strip() == "LCK"


def test_classify_totally_real_is_input_error(capsys):
    code, out = run(capsys, "classify", "--poly", "-2,0,1")
    assert code == 2
    assert json.loads(out)["error"]["type"] == "NoComplexPlace"


@pytest.mark.parametrize("poly, kind", [
    ("-1,0,1", "ReduciblePolynomial"),
    ("1,x", "InvalidPolynomial"),
    ("-1,-1,0,2", "NotMonic"),
])
def test_bad_polynomials_exit_2(capsys, poly, kind):
    code, out = run(capsys, "analyze", "--poly", poly)
    assert code == 2 and json.loads(out)["error"]["type"] == kind


def test_rank_deficient_units_exit_2(capsys):
    code, out = run(capsys, "units", "--poly", CUBIC, "--height", "0")
    assert code == 2


def test_units_report(capsys):
    code, out = run(capsys, "units", "--poly", CUBIC, "--height", "3")
    rep = json.loads(out)
    assert code == 0
    assert rep["schema"] == "otlab-report/1"
    assert rep["units"]["generators"] == [[0, 1, 0]]
    assert rep["units"]["verdict"] == "AdmissibleT1"
    assert abs(rep["units"]["regulator"] - 0.28119957432296183) < 1e-15


def test_failed_check_exits_1(capsys):
    code, out = run(capsys, "geometry", "--poly", CUBIC, "--samples", "10", "--tol", "1e-30")
    assert code == 1
    assert json.loads(out)["verdict"] == "fail"


def test_geometry_reports_c0(capsys):
    code, out = run(capsys, "geometry", "--poly", CUBIC, "--samples", "20")
    rep = json.loads(out)
    assert code == 0
    assert abs(rep["c0"]["value"] - 0.5) < 1e-6
    assert all("tol" in c and "pass" in c for c in rep["checks"].values())


def test_density_csv(tmp_path, capsys):
    path = tmp_path / "pts.csv"
    code, out = run(capsys, "density", "--poly", CUBIC, "--height", "2", "--csv", str(path))
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["sigma_1"] and len(rows) == 1 + 125
    code, _ = run(capsys, "density", "--poly", CUBIC, "--height", "2", "--csv", str(path), "--no-header")
    rows = list(csv.reader(path.open()))
    assert len(rows) == 125 and float(rows[0][0]) < 0


def test_leaf_command(tmp_path, capsys):
    path = tmp_path / "leaf.csv"
    code, out = run(capsys, "leaf", "--poly", CUBIC, "--height", "4", "--box", "-1,1", "--csv", str(path))
    rep = json.loads(out)
    assert code == 0 and rep["checks"]["leaf_im_invariance"]["pass"]
    assert next(csv.reader(path.open())) == ["x_1", "re_w", "im_w"]


def test_report_written_to_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, printed = run(capsys, "report", "--poly", CUBIC, "--height", "4", "--samples", "20", "--out", str(out))
    assert code == 0 and printed == ""
    rep = json.loads(out.read_text())
    assert rep["classification"] == "LCK" and rep["verdict"] == "pass"
    assert list(rep)[-1] == "meta" and "timestamp" in rep["meta"]


def test_bad_config_values():
    with pytest.raises(ValueError):
        RunConfig(poly=(1,), samples=0)
    assert RunConfig(poly=(1,), height=16).heights() == (2, 4, 8, 16)
    assert RunConfig(poly=(1,), height=5).heights() == (2, 4, 5)
    assert RunConfig(poly=(1,), height=1).heights() == (1,)


def test_float_formatting():
    text = dumps({"x": 0.1, "y": [1.0, 2], "z": float("nan")})
    assert '"x": 0.10000000000000001' in text
    assert json.loads(text)["y"] == [1, 2]


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "otlab.cli", "classify", "--poly", "-1,-1,0,0,0,1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "NotLCK"
