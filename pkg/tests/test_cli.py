"""Command-line behavior: files, schemas, determinism, exit codes."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

import dequant as dq
from dequant.cli import main


@pytest.fixture(scope="module")
def hydrogen_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli") / "h311"
    code = main(["hydrogen", "--n", "3", "--l", "1", "--m", "1", "--out", str(out)])
    assert code == 0
    return out


def test_hydrogen_files_and_summary(hydrogen_run):
    csv = hydrogen_run.with_suffix(".csv")
    summary = json.loads(hydrogen_run.with_suffix(".json").read_text())
    lines = csv.read_text().splitlines()
    assert lines[0] == "r,t_c,t_w,t"
    assert len(lines) == 4002
    assert summary["n"] == 3 and summary["l"] == 1 and summary["m"] == 1
    assert summary["T_C"] == pytest.approx(1.0 / 54.0, rel=1e-7)
    assert summary["T_W"] == pytest.approx(1.0 / 27.0, rel=1e-7)
    assert summary["analytic_T_C"] == 1.0 / 54.0
    assert summary["analytic_T_W"] == 1.0 / 27.0
    assert summary["max_pointwise_residual"] <= 1e-6
    assert summary["fisher"] == pytest.approx(8.0 * summary["T_W"], rel=1e-12)


def test_hydrogen_csv_reintegrates_to_summary(hydrogen_run):
    # integrating the emitted profiles with the documented grid weights
    # reproduces the JSON scalars
    summary = json.loads(hydrogen_run.with_suffix(".json").read_text())
    rows = np.loadtxt(hydrogen_run.with_suffix(".csv"), delimiter=",", skiprows=1)
    grid = dq.make_spherical_grid(
        r_max=summary["grid"]["r_max"],
        n_r=summary["grid"]["n_r"],
        n_theta=summary["grid"]["n_theta"],
    )
    np.testing.assert_allclose(rows[:, 0], grid.r.points, rtol=1e-15)
    for col, key in ((1, "T_C"), (2, "T_W"), (3, "T")):
        total = float((grid.r.weights * rows[:, col]).sum())
        assert total == pytest.approx(summary[key], abs=1e-9)


def test_hydrogen_output_deterministic(tmp_path):
    args = ["hydrogen", "--n", "2", "--l", "1", "--m", "0", "--points", "1201",
            "--rmax", "40", "--theta-points", "301"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_invalid_quantum_numbers_exit_2(tmp_path, capsys):
    code = main(["hydrogen", "--n", "3", "--l", "3", "--m", "0", "--out", str(tmp_path / "x")])
    assert code == 2
    assert "l < n" in capsys.readouterr().err
    assert list(tmp_path.iterdir()) == []


def test_unwritable_path_exit_4(capsys):
    code = main(["gaussian", "--times", "0", "--out", "/nonexistent/dir/y"])
    assert code == 4
    assert "cannot write" in capsys.readouterr().err


def test_pib_summary_values(tmp_path):
    out = tmp_path / "p"
    assert main(["pib", "--times", "0", "--out", str(out)]) == 0
    series = json.loads(out.with_suffix(".json").read_text())["series"]
    e_mean = 5.0 * math.pi**2 / 4.0
    assert series[0]["T"] == pytest.approx(e_mean, rel=1e-10)
    assert series[0]["T_W"] == pytest.approx(e_mean, rel=1e-10)
    assert series[0]["T_C"] == 0.0
    assert (out.parent / "p_000.csv").exists()
    header = (out.parent / "p_000.csv").read_text().splitlines()[0]
    assert header == "x,p,t_c,t_w,t"


def test_pib_rejects_negative_time(capsys):
    assert main(["pib", "--times", "0,-0.5"]) == 2
    assert "nonnegative" in capsys.readouterr().err


def test_pib_oracle_key(tmp_path):
    out = tmp_path / "po"
    code = main(["pib", "--times", "0,0.005", "--points", "2001", "--oracle",
                 "--out", str(out), "--format", "json"])
    assert code == 0
    series = json.loads(out.with_suffix(".json").read_text())["series"]
    assert series[0]["cn_l2_residual"] == 0.0
    assert 0.0 < series[1]["cn_l2_residual"] <= 1e-6


def test_gaussian_series_and_format_selection(tmp_path):
    out = tmp_path / "g"
    code = main(["gaussian", "--times", "0,1.5,3", "--out", str(out), "--format", "json"])
    assert code == 0
    assert not (out.parent / "g_000.csv").exists()
    series = json.loads(out.with_suffix(".json").read_text())["series"]
    assert [e["t"] for e in series] == [0.0, 1.5, 3.0]
    for entry in series:
        assert entry["T"] == pytest.approx(0.25, rel=1e-8)
    assert series[1]["T_W"] == pytest.approx(1.0 / 13.0, rel=1e-8)
    assert series[2]["T_W"] == pytest.approx(1.0 / 40.0, rel=1e-8)
    assert series[0]["T_C"] == 0.0


def test_gaussian_csv_only(tmp_path):
    out = tmp_path / "gc"
    code = main(["gaussian", "--times", "0", "--out", str(out), "--format", "csv"])
    assert code == 0
    assert (out.parent / "gc_000.csv").exists()
    assert not out.with_suffix(".json").exists()


def test_gaussian_too_long_time_exit_2(capsys):
    assert main(["gaussian", "--times", "50"]) == 2
    assert "widen" in capsys.readouterr().err


def test_stdout_json_without_out(capsys):
    assert main(["gaussian", "--times", "0", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["system"] == "gaussian"
    assert payload["series"][0]["T_C"] == 0.0


def test_scan_single_alpha(tmp_path):
    out = tmp_path / "s1"
    code = main(["scan", "--system", "gaussian", "--time", "1.5", "--alphas", "1",
                 "--out", str(out)])
    assert code == 0
    payload = json.loads(out.with_suffix(".json").read_text())
    assert "vertex_alpha" not in payload
    rows = out.with_suffix(".csv").read_text().splitlines()
    assert rows[0] == "alpha,T_alpha"
    alpha, value = (float(v) for v in rows[1].split(","))
    assert alpha == 1.0
    assert value == pytest.approx(payload["T_C"], rel=1e-9)


def test_scan_vertex_recovered(tmp_path):
    out = tmp_path / "sv"
    code = main(["scan", "--system", "gaussian", "--time", "1.5", "--out", str(out),
                 "--alphas", "0,0.25,0.5,0.75,1,1.25,1.5,1.75,2"])
    assert code == 0
    payload = json.loads(out.with_suffix(".json").read_text())
    assert payload["vertex_alpha"] == pytest.approx(1.0, abs=1e-6)
    assert payload["vertex_T"] == pytest.approx(9.0 / 52.0, rel=1e-6)


def test_scan_rejects_empty_alphas(capsys):
    assert main(["scan", "--system", "gaussian", "--alphas", ","]) == 2
    assert "empty" in capsys.readouterr().err


def test_console_script_validation():
    proc = subprocess.run(
        [sys.executable, "-m", "dequant.cli", "hydrogen", "--n", "1", "--l", "1", "--m", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "l < n" in proc.stderr
