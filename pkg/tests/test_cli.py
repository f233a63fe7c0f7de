import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

REPO = Path(__file__).resolve().parent.parent
CONFIGS = REPO / "configs"


def run_cli(*args, expect=0):
    result = subprocess.run(
        [sys.executable, "-m", "enaqt_fcn.cli", *args],
        capture_output=True,
        text=True,
    )
    assert result.returncode == expect, (
        f"exit {result.returncode}, expected {expect}\nstderr: {result.stderr}"
    )
    return result


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return path


def parse_csv(text):
    lines = text.strip().split("\n")
    header = lines[0].split(",")
    rows = [dict(zip(header, (float(x) for x in line.split(",")))) for line in lines[1:]]
    return header, rows


class TestSweepCommand:
    def test_landscape_surface_max(self, tmp_path):
        out = tmp_path / "sweep_detuned.csv"
        run_cli("sweep", "--config", str(CONFIGS / "sweep_detuned.json"), "--out", str(out))
        header, rows = parse_csv(out.read_text())
        assert header == ["lambda", "kappa", "eta", "tau", "rate"]
        assert len(rows) == 200 * 200
        best = max(rows, key=lambda r: r["eta"])
        assert best["eta"] == pytest.approx(0.33, abs=0.005)
        assert best["lambda"] == pytest.approx(56.0, abs=3.0)
        assert best["kappa"] == pytest.approx(44.0, abs=3.0)

    def test_zero_detuning_surface_max(self, tmp_path):
        out = tmp_path / "sweep_resonant.csv"
        run_cli("sweep", "--config", str(CONFIGS / "sweep_resonant.json"), "--out", str(out))
        _, rows = parse_csv(out.read_text())
        best = max(rows, key=lambda r: r["eta"])
        assert best["eta"] == pytest.approx(0.83, abs=0.005)

    def test_single_cell(self, tmp_path):
        config = write_config(
            tmp_path,
            {
                "params": {
                    "n_sites": 20, "coupling": 1.0, "detuning": 100.0,
                    "trap_rate": 44.0, "decay_rate": 0.01,
                },
                "s": 1,
                "axes": [{"name": "lambda", "min": 56.0, "max": 56.0, "count": 1}],
            },
        )
        result = run_cli("sweep", "--config", str(config))
        header, rows = parse_csv(result.stdout)
        assert header == ["lambda", "eta", "tau", "rate"]
        assert len(rows) == 1
        assert rows[0]["eta"] == pytest.approx(0.332068398813, rel=1e-11)

    def test_byte_identical_reruns(self, tmp_path):
        config = write_config(
            tmp_path,
            {
                "params": {"n_sites": 10, "coupling": 1.0, "detuning": 10.0, "decay_rate": 0.05},
                "s": 2,
                "axes": [
                    {"name": "lambda", "min": 0.5, "max": 50.0, "count": 20, "spacing": "log"},
                    {"name": "kappa", "min": 0.5, "max": 50.0, "count": 20, "spacing": "log"},
                ],
            },
        )
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        run_cli("sweep", "--config", str(config), "--out", str(first))
        run_cli("sweep", "--config", str(config), "--out", str(second), "--threads", "4")
        assert first.read_bytes() == second.read_bytes()

    def test_flagged_rows_are_nan_only(self, tmp_path):
        config = write_config(
            tmp_path,
            {
                "params": {"n_sites": 10, "coupling": 1.0, "detuning": 10.0,
                           "decay_rate": 0.05, "dephasing_rate": 1.0},
                "s": 1,
                "axes": [{"name": "kappa", "min": 0.0, "max": 2.0, "count": 3}],
            },
        )
        result = run_cli("sweep", "--config", str(config))
        lines = result.stdout.strip().split("\n")
        first_row = lines[1].split(",")
        assert first_row[1:] == ["nan", "nan", "nan"]
        for line in lines[2:]:
            assert all(math.isfinite(float(x)) for x in line.split(","))

    def test_unknown_key_rejected(self, tmp_path):
        config = write_config(
            tmp_path,
            {
                "params": {"n_sites": 10, "coupling": 1.0, "detuning": 0.0, "decay_rate": 0.1},
                "s": 1,
                "axes": [{"name": "lambda", "min": 1.0, "max": 2.0, "count": 2}],
                "surprise": True,
            },
        )
        run_cli("sweep", "--config", str(config), expect=2)

    def test_invalid_template_rejected(self, tmp_path):
        config = write_config(
            tmp_path,
            {
                "params": {"n_sites": 1, "coupling": 1.0, "detuning": 0.0,
                           "trap_rate": 1.0, "decay_rate": 0.1, "dephasing_rate": 0.0},
                "s": 1,
                "axes": [{"name": "lambda", "min": 1.0, "max": 2.0, "count": 2}],
            },
        )
        run_cli("sweep", "--config", str(config), expect=2)

    def test_full_solver_not_supported_for_sweeps(self, tmp_path):
        run_cli(
            "sweep", "--config", str(CONFIGS / "sweep_detuned.json"), "--solver", "full", expect=2
        )

    def test_missing_config(self):
        run_cli("sweep", expect=2)


class TestOptimizeCommand:
    def test_interior_optimum_report(self, tmp_path):
        out = tmp_path / "report.json"
        run_cli("optimize", "--config", str(CONFIGS / "optimize_detuned.json"), "--out", str(out))
        report = json.loads(out.read_text())
        assert report["value"] == pytest.approx(0.33, abs=0.005)
        assert report["argmax"]["lambda"] == pytest.approx(56.0, abs=2.0)
        assert report["argmax"]["kappa"] == pytest.approx(44.0, abs=2.0)
        assert report["boundary_flag"] is False

    def test_boundary_optimum_report(self, tmp_path):
        result = run_cli("optimize", "--config", str(CONFIGS / "optimize_coherent_start.json"))
        report = json.loads(result.stdout)
        assert report["boundary_flag"] is True
        assert report["argmax"]["lambda"] == pytest.approx(0.0, abs=1e-6)
        assert report["argmax"]["kappa"] == pytest.approx(100.0, abs=1e-3)
        assert report["value"] == pytest.approx(0.9, abs=0.01)

    def test_rate_mode_attaches_analytic_deltas(self):
        result = run_cli("optimize", "--config", str(CONFIGS / "rate_optimum.json"))
        report = json.loads(result.stdout)
        assert "analytic" in report
        assert max(report["analytic_deltas"].values()) < 1e-6
        assert max(abs(r) for r in report["stationarity_residuals"]["at_analytic"]) < 1e-10

    def test_nonconvergent_exit_code(self, tmp_path):
        config = write_config(
            tmp_path,
            {
                "params": {"n_sites": 20, "coupling": 1.0, "detuning": 100.0, "decay_rate": 0.01},
                "s": 1,
                "domain": {"lambda": [0.0, 100.0], "kappa": [0.0, 100.0]},
                "max_iter": 1,
            },
        )
        run_cli("optimize", "--config", str(config), expect=3)

    def test_byte_identical_reports(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run_cli("optimize", "--config", str(CONFIGS / "optimize_detuned.json"), "--out", str(a))
        run_cli("optimize", "--config", str(CONFIGS / "optimize_detuned.json"), "--out", str(b))
        assert a.read_bytes() == b.read_bytes()


class TestValidateCommand:
    def test_default_seed_passes(self):
        result = run_cli("validate")
        summary = json.loads(result.stdout)
        assert summary["all_passed"] is True
        names = {suite["name"] for suite in summary["suites"]}
        assert "closed_vs_reduced" in names
        assert "brute_vs_resolvent" in names
        assert "singular_guard" in names
        guard = next(s for s in summary["suites"] if s["name"] == "singular_guard")
        assert guard["passed"] is True

    def test_seed_override_passes(self):
        result = run_cli("validate", "--seed", "98765")
        summary = json.loads(result.stdout)
        assert summary["seed"] == 98765
        assert summary["all_passed"] is True


class TestTrajectoryCommand:
    def test_columns_and_initial_row(self, tmp_path):
        out = tmp_path / "traj.csv"
        run_cli("trajectory", "--config", str(CONFIGS / "trajectory.json"), "--out", str(out))
        header, rows = parse_csv(out.read_text())
        assert header == [
            "t", "rho_nn", "x", "y", "sigma", "trace", "eta_acc", "decay_acc", "rho_nn_full",
        ]
        first = rows[0]
        assert first["t"] == 0.0
        assert (first["rho_nn"], first["x"], first["y"]) == (0.0, 0.0, 0.0)
        assert first["sigma"] == 3.0
        assert first["trace"] == 1.0

    def test_conservation_and_full_agreement(self, tmp_path):
        out = tmp_path / "traj.csv"
        run_cli("trajectory", "--config", str(CONFIGS / "trajectory.json"), "--out", str(out))
        _, rows = parse_csv(out.read_text())
        for row in rows:
            total = row["eta_acc"] + row["decay_acc"] + row["trace"]
            assert total == pytest.approx(1.0, abs=1e-9)
            assert row["rho_nn_full"] == pytest.approx(row["rho_nn"], abs=1e-9)

    def test_dimension_cap_exit_code(self, tmp_path):
        config = write_config(
            tmp_path,
            {
                "params": {"n_sites": 50, "coupling": 1.0, "detuning": 0.0,
                           "trap_rate": 1.0, "decay_rate": 0.1, "dephasing_rate": 1.0},
                "initial": {"s": 1},
                "times": {"start": 0.0, "stop": 1.0, "count": 3},
                "include_full": True,
            },
        )
        run_cli("trajectory", "--config", str(config), expect=3)

    def test_density_matrix_initial_condition(self, tmp_path):
        n = 4
        rho = np.zeros((n, n))
        rho[0, 0] = 1.0
        config = write_config(
            tmp_path,
            {
                # coupling omitted: defaults to 1, rates in units of J
                "params": {"n_sites": n, "detuning": 2.0,
                           "trap_rate": 1.0, "decay_rate": 0.1, "dephasing_rate": 0.5},
                "initial": {"density_matrix": {"re": rho.tolist()}},
                "times": {"list": [0.0, 0.5, 1.0]},
            },
        )
        result = run_cli("trajectory", "--config", str(config))
        header, rows = parse_csv(result.stdout)
        assert header == ["t", "rho_nn", "x", "y", "sigma", "trace"]
        assert rows[0]["sigma"] == 1.0
        assert rows[0]["rho_nn"] == 0.0


class TestLimitsCommand:
    def test_report_contents(self):
        result = run_cli("limits", "--config", str(CONFIGS / "limits.json"))
        report = json.loads(result.stdout)
        assert report["detuning"] == 100.0
        assert report["general"]["efficiency"] == pytest.approx(0.33207, abs=1e-4)
        assert report["enaqt_optimum"]["kappa_opt"] == pytest.approx(42.9386, abs=1e-3)
        assert report["coherent"]["kappa_star"] == pytest.approx(np.sqrt(2 * 19 + 100**2), rel=1e-12)
        assert report["weak_decay_efficiency"] == pytest.approx(
            report["general"]["efficiency"], abs=0.01
        )
        assert max(abs(r) for r in report["stationarity_residuals_at_optimum"]) < 1e-12

    def test_degenerate_blocks_reported_not_fatal(self, tmp_path):
        config = write_config(
            tmp_path,
            {
                "params": {"n_sites": 5, "coupling": 1.0, "detuning": 0.0,
                           "trap_rate": 2.0, "decay_rate": 0.0, "dephasing_rate": 1.0},
                "s": 2,
            },
        )
        result = run_cli("limits", "--config", str(config))
        report = json.loads(result.stdout)
        # decay-free network: the printed no-dephasing forms are degenerate
        assert "error" in report["no_dephasing"]["alpha"]
        assert report["general"]["efficiency"] == pytest.approx(1.0, abs=1e-14)
