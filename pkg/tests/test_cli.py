"""Tests for the command-line entry point."""

import json

import pytest

from main import cli, format_report, load_config, load_suite
from models.errors import ConfigurationError
from pipeline.graph import run_scenario
from pipeline.scenarios import HANDLERS


@pytest.fixture
def kernel_file(kernel_config, tmp_path):
    path = tmp_path / "kernel.json"
    path.write_text(kernel_config.model_dump_json())
    return path


class TestLoadConfig:
    def test_seed_override(self, kernel_file):
        assert load_config(kernel_file, seed=7).seed == 7
        assert load_config(kernel_file).seed == 0

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_config(tmp_path / "absent.json")

    def test_invalid_file(self, kernel_file, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({**json.loads(kernel_file.read_text()), "scenario": "heat_equation"}))
        with pytest.raises(ConfigurationError):
            load_config(path)

    def test_acceptance_suite_loads(self):
        configs = load_suite("acceptance")
        assert sorted(c.scenario for c in configs) == sorted(HANDLERS)

    def test_acceptance_windows_and_budgets(self):
        configs = {c.scenario: c for c in load_suite("acceptance")}
        unequal = configs["unequal_diff_decay"]
        assert unequal.boundedness_window is None
        assert unequal.fit_window.as_tuple() == (20.0, 2000.0)
        ends = unequal.initial.options
        assert ends["u_left"] == ends["v_left"] ** 2
        assert ends["u_right"] == ends["v_right"] ** 2
        assert unequal.gronwall.pairs >= 10
        budgets = {name: c.runtime_budget_s for name, c in configs.items() if c.runtime_budget_s is not None}
        assert budgets == {"equal_diff_decay": 120.0, "unequal_diff_decay": 180.0, "kernel_table": 120.0}
        assert configs["kernel_table"].kernel.oracle_budget_s == 30.0

    def test_unknown_suite(self):
        with pytest.raises(ConfigurationError):
            load_suite("nightly")


class TestCli:
    def test_list_scenarios(self, capsys):
        assert cli(["list", "scenarios"]) == 0
        out = capsys.readouterr().out
        assert all(name in out for name in HANDLERS)

    def test_bad_config_exit_code(self, tmp_path):
        assert cli(["--out", str(tmp_path), "run", str(tmp_path / "absent.json")]) == 2

    def test_run_writes_artifacts(self, kernel_file, tmp_path, capsys):
        out = tmp_path / "results"
        assert cli(["--out", str(out), "run", str(kernel_file)]) == 0
        assert (out / "kernel_table" / "report.json").exists()
        assert "1/1 scenario(s) passed" in capsys.readouterr().out


class TestFormatReport:
    def test_sections(self, kernel_config):
        text = format_report(run_scenario(kernel_config))
        assert "KERNEL_TABLE: PASS" in text
        assert "ACCEPTANCE" in text
        assert "DECAY FITS" in text
