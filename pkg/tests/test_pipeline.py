"""Integration tests for the scenario and suite graphs."""

import json
import math
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pytest

from main import load_config
from models.errors import ConfigurationError, IntegrationError
from models.scenario import ScenarioConfig
from pipeline.graph import job_directories, run_job, run_scenario, run_suite, should_continue
from pipeline.scenarios import get_handler, kernel_table
from pipeline.stages.fit import run_fit
from pipeline.scenarios.base import Diagnosis, FitRequest, make_series
from pipeline.scenarios.common import scaled_boundedness


class TestConditionalRouting:
    def test_continue_without_error(self):
        assert should_continue({"error": None}) == "continue"

    def test_failure_report_on_error(self):
        assert should_continue({"error": "FitError: empty window"}) == "failure_report"


class TestScenarioRun:
    def test_kernel_table_passes(self, kernel_config):
        report = run_scenario(kernel_config)
        assert report.passed, [c.name for c in report.checks if not c.passed]
        assert report.error is None
        assert {"prepare", "simulate", "diagnose", "fit", "assess", "report"} <= set(report.stage_metrics)
        assert len(report.results_digest) == 64

    def test_neumann_interval_converges(self, neumann_config):
        report = run_scenario(neumann_config)
        assert report.passed, [c.name for c in report.checks if not c.passed]
        assert report.measurements["final_distance"] < 1e-4

    def test_prepare_failure_routes_to_failure_report(self, kernel_config):
        bad = ScenarioConfig.model_validate(
            {**kernel_config.model_dump(), "initial": {"name": "constant_pair", "options": {"w": 1.0}}}
        )
        report = run_scenario(bad)
        assert not report.passed
        assert report.failed_stage == "prepare"
        assert report.error.startswith("ConfigurationError")
        assert report.checks == []

    def test_simulate_failure_keeps_earlier_metrics(self, kernel_config):
        with patch.object(kernel_table, "simulate", side_effect=IntegrationError("non-finite concentration", 2.5)):
            report = run_scenario(kernel_config)
        assert report.failed_stage == "simulate"
        assert "t=2.5" in report.error
        assert "prepare" in report.stage_metrics
        assert "failure_report" in report.stage_metrics

    def test_artifacts_written(self, kernel_config, tmp_path):
        run_scenario(kernel_config, tmp_path / "kernel")
        saved = json.loads((tmp_path / "kernel" / "report.json").read_text())
        assert saved["scenario"] == "kernel_table"
        assert (tmp_path / "kernel" / "kernel_N_M.csv").exists()

    def test_unknown_scenario(self):
        with pytest.raises(ConfigurationError):
            get_handler("heat_equation")


class TestRuntimeBudget:
    def test_budget_check_added(self, kernel_config):
        cfg = kernel_config.model_copy(update={"runtime_budget_s": 3600.0})
        report = run_scenario(cfg)
        budget = next(c for c in report.checks if c.name == "runtime_budget")
        assert budget.passed
        assert 0.0 < budget.value <= report.wall_time_s

    def test_exceeded_budget_fails(self, kernel_config):
        cfg = kernel_config.model_copy(update={"runtime_budget_s": 1e-9})
        report = run_scenario(cfg)
        assert not report.passed
        assert [c.name for c in report.checks if not c.passed] == ["runtime_budget"]

    def test_no_budget_no_check(self, kernel_config):
        assert all(c.name != "runtime_budget" for c in run_scenario(kernel_config).checks)

    def test_oracle_budget(self, kernel_config):
        kernel = kernel_config.kernel.model_copy(update={"oracle_budget_s": 600.0})
        report = run_scenario(kernel_config.model_copy(update={"kernel": kernel}))
        oracle = next(c for c in report.checks if c.name == "oracle_runtime")
        assert oracle.passed
        assert report.measurements["oracle_seconds"] == pytest.approx(oracle.value)


SMALL_GRID = {"length": 128.0, "points": 512, "bc": "periodic"}
SMALL_LOG = {"spacing": "log", "start": 1.0, "stop": 40.0, "count": 24}

REDUCED_CONFIGS = {
    "equal_diff_decay": {
        "scenario": "equal_diff_decay",
        "params": {"a": 1.0, "b": 1.0, "k": 1.0},
        "grid": SMALL_GRID,
        "initial": {"name": "riemann_smoothed"},
        "horizon": 40.0,
        "output": SMALL_LOG,
        "fit_window": {"t_lo": 4.0, "t_hi": 40.0},
    },
    "unequal_diff_decay": {
        "scenario": "unequal_diff_decay",
        "params": {"a": 1.0, "b": 2.0, "k": 1.0},
        "grid": SMALL_GRID,
        "initial": {
            "name": "riemann_smoothed",
            "options": {"width": 5.0, "u_left": 1.0, "v_left": 1.0, "u_right": 0.0, "v_right": 0.0},
        },
        "horizon": 40.0,
        "output": SMALL_LOG,
        "fit_window": {"t_lo": 4.0, "t_hi": 40.0},
        "gronwall": {"pairs": 10, "t_min": 4.0, "early_until": 2.0, "early_count": 200},
    },
    "riemann_mixing": {
        "scenario": "riemann_mixing",
        "params": {"a": 1.0, "b": 2.0, "k": 1.0},
        "grid": SMALL_GRID,
        "initial": {"name": "riemann_smoothed"},
        "horizon": 40.0,
        "output": {"spacing": "log", "start": 1.0, "stop": 40.0, "count": 30},
        "mixing": {"collapse_t1": 10.0},
    },
    "structure_sweep": {
        "scenario": "structure_sweep",
        "params": {"a": 1.0, "b": 2.0, "k": 1.0},
        "grid": {"length": 20.0, "points": 128, "bc": "periodic"},
        "initial": {"name": "gaussian_bump", "options": {"u_amplitude": 1.0, "v_amplitude": 0.5, "width": 2.0}},
        "horizon": 1.0,
        "output": {"spacing": "log", "start": 0.05, "stop": 1.0, "count": 12},
        "refinement": {
            "dt": 0.05,
            "horizon": 0.5,
            "spatial_points": 64,
            "probe_states": 256,
            "linearized_pairs": 2,
            "ode_samples": 200,
        },
    },
    "rdnm_decay": {
        "scenario": "rdnm_decay",
        "params": {"a": 1.0, "b": 2.0, "k": 1.0, "n_st": 2, "m_st": 1},
        "grid": {"length": 32.0, "points": 128, "bc": "periodic"},
        "initial": {"name": "gaussian_bump", "options": {"u_amplitude": 1.0, "width": 2.0}},
        "horizon": 20.0,
        "output": {"spacing": "log", "start": 0.5, "stop": 20.0, "count": 24},
        "fit_window": {"t_lo": 2.0, "t_hi": 20.0},
    },
}

SIGN_CHECKS = {"primary_signs", "flux_bound", "ordering", "dpos"}


class TestReducedScenarios:
    @pytest.mark.parametrize("scenario", sorted(REDUCED_CONFIGS))
    def test_runs_to_report(self, scenario):
        report = run_scenario(ScenarioConfig.model_validate(REDUCED_CONFIGS[scenario]))
        assert report.error is None, report.error
        assert report.failed_stage is None
        assert report.checks
        assert {"simulate", "diagnose", "assess", "report"} <= set(report.stage_metrics)

    @pytest.mark.parametrize("scenario", ["equal_diff_decay", "unequal_diff_decay"])
    def test_pointwise_structures_hold(self, scenario):
        report = run_scenario(ScenarioConfig.model_validate(REDUCED_CONFIGS[scenario]))
        passed = {c.name for c in report.checks if c.passed}
        assert SIGN_CHECKS <= passed

    def test_unequal_gronwall_pairs_pass(self):
        report = run_scenario(ScenarioConfig.model_validate(REDUCED_CONFIGS["unequal_diff_decay"]))
        gronwall = next(c for c in report.checks if c.name == "gronwall_pairs")
        assert gronwall.passed, gronwall.detail
        assert gronwall.value == 10.0
        assert report.measurements["snapshots"] > 200

    def test_too_few_gronwall_pairs_rejected(self):
        config = {**REDUCED_CONFIGS["unequal_diff_decay"], "gronwall": {"pairs": 6, "t_min": 4.0}}
        report = run_scenario(ScenarioConfig.model_validate(config))
        assert report.failed_stage == "simulate"
        assert report.error.startswith("ConfigurationError")
        assert "at least 10" in report.error

    def test_rdnm_accepts_one_two_stoichiometry(self):
        config = {
            **REDUCED_CONFIGS["rdnm_decay"],
            "params": {"a": 1.0, "b": 2.0, "k": 1.0, "n_st": 1, "m_st": 2},
        }
        report = run_scenario(ScenarioConfig.model_validate(config))
        assert report.error is None, report.error

    def test_fisher_wave_over_full_horizon(self):
        cfg = load_config(Path(__file__).parent.parent / "configs" / "acceptance" / "fisher_counterexample.json")
        report = run_scenario(cfg)
        assert report.error is None, report.error
        assert report.passed, [c.name for c in report.checks if not c.passed]
        assert report.measurements["embedding_deviation"] <= cfg.tolerances.fisher_embedding


class TestFitStage:
    def _state(self, cfg, series, requests):
        return {
            "config": cfg,
            "diagnosis": Diagnosis(series=series),
            "stage_metrics": {},
        }, requests

    def test_zero_series_is_trivial(self, kernel_config):
        series = [make_series("rho_sup", [1.0, 2.0, 4.0], [0.0, 0.0, 0.0])]
        state, requests = self._state(kernel_config, series, [FitRequest("rho_sup", -1.0)])
        with patch.object(kernel_table, "fit_requests", return_value=requests):
            update = run_fit(state)
        assert update["diagnosis"].zero_series == ["rho_sup"]

    def test_missing_series_fails(self, kernel_config):
        state, requests = self._state(kernel_config, [], [FitRequest("u_x_sup", -0.5)])
        with patch.object(kernel_table, "fit_requests", return_value=requests):
            update = run_fit(state)
        assert update["failed_stage"] == "fit"

    def test_informational_fit_failure_is_skipped(self, kernel_config):
        series = [make_series("v_x_sup", [1.0, 2.0], [1.0, 0.5])]
        state, requests = self._state(kernel_config, series, [FitRequest("v_x_sup", -0.5, informational=True)])
        with patch.object(kernel_table, "fit_requests", return_value=requests):
            update = run_fit(state)
        assert "error" not in update
        assert update["diagnosis"].fits == {}

    def test_fit_adds_envelope(self, kernel_config):
        times = [float(t) for t in range(1, 21)]
        series = [make_series("u_x_sup", times, [t**-0.5 for t in times])]
        state, requests = self._state(kernel_config, series, [FitRequest("u_x_sup", -0.5)])
        with patch.object(kernel_table, "fit_requests", return_value=requests):
            update = run_fit(state)
        fitted = update["diagnosis"]
        assert fitted.fits["u_x_sup"].slope == pytest.approx(-0.5)
        assert fitted.get_series("u_x_sup").envelope is not None


class TestSuite:
    def test_job_directories(self, kernel_config, neumann_config):
        configs = [kernel_config, neumann_config, kernel_config]
        assert job_directories(configs) == ["kernel_table_0", "neumann_interval", "kernel_table_2"]

    def test_empty_suite(self, tmp_path):
        assert run_suite([], tmp_path) == []

    def test_reports_in_config_order(self, kernel_config, neumann_config, tmp_path):
        reports = run_suite([neumann_config, kernel_config], tmp_path, threads=2)
        assert [r.scenario for r in reports] == ["neumann_interval", "kernel_table"]
        summary = json.loads((tmp_path / "suite.json").read_text())
        assert [job["directory"] for job in summary["jobs"]] == ["neumann_interval", "kernel_table"]
        assert (tmp_path / "kernel_table" / "report.json").exists()

    def test_emission_failure_becomes_errored_report(self, kernel_config, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        update = run_job({"config": kernel_config, "out_dir": str(blocker / "kernel_table")})
        report = update["reports"][0]
        assert not report.passed
        assert report.failed_stage == "emit"
        assert report.error.startswith("EmissionError")


class TestScaledBoundedness:
    times = np.geomspace(1.0, 2000.0, 80)

    def test_layer_offset_stays_within_ratio(self):
        peak, median = scaled_boundedness(self.times, 1.0 / (7.0 + self.times), 0.5, (20.0, 2000.0))
        assert peak / median < 3.0

    def test_pure_inverse_tail_exceeds_ratio(self):
        peak, median = scaled_boundedness(self.times, 1.0 / self.times, 0.5, (20.0, 2000.0))
        assert peak / median > 3.0

    def test_empty_window(self):
        peak, median = scaled_boundedness(self.times, 1.0 / self.times, 0.5, (3000.0, 4000.0))
        assert math.isnan(peak) and math.isnan(median)
