"""Tests for report artifacts and hashes."""

import json

import pytest

from models.errors import EmissionError
from models.report import Report, TimeSeries
from pipeline.emit import (
    PLOT_FILE,
    REPORT_FILE,
    config_hash,
    emit,
    load_report,
    results_digest,
    write_suite_summary,
)


def _report(cfg, series=()) -> Report:
    return Report(
        scenario=cfg.scenario,
        claim="kernel projections decay",
        config=cfg,
        config_hash=config_hash(cfg),
        series=list(series),
        measurements={"oracle_max_rel_error": 1e-14},
        passed=True,
    )


SERIES = TimeSeries(name="kernel N/M", times=[1.0, 2.0], values=[0.5, 0.25], envelope=[0.6, 0.3])


class TestHashes:
    def test_config_hash_is_git_blob_sha1(self, kernel_config):
        digest = config_hash(kernel_config)
        assert len(digest) == 40
        assert digest == config_hash(kernel_config.model_copy())

    def test_config_hash_tracks_seed(self, kernel_config):
        assert config_hash(kernel_config) != config_hash(kernel_config.model_copy(update={"seed": 1}))

    def test_results_digest_ignores_timing(self, kernel_config):
        report = _report(kernel_config)
        slower = report.model_copy(update={"wall_time_s": 99.0})
        assert results_digest(report) == results_digest(slower)

    def test_results_digest_tracks_measurements(self, kernel_config):
        report = _report(kernel_config)
        changed = report.model_copy(update={"measurements": {"oracle_max_rel_error": 1e-9}})
        assert results_digest(report) != results_digest(changed)


class TestEmit:
    def test_report_only_without_series(self, kernel_config, tmp_path):
        paths = emit(_report(kernel_config), tmp_path / "run")
        assert [p.name for p in paths] == [REPORT_FILE]
        assert sorted(p.name for p in (tmp_path / "run").iterdir()) == [REPORT_FILE]

    def test_series_written_as_csv(self, kernel_config, tmp_path):
        emit(_report(kernel_config, [SERIES]), tmp_path / "run")
        lines = (tmp_path / "run" / "kernel_N_M.csv").read_text().splitlines()
        assert lines[0] == "t,value,envelope"
        assert lines[1] == "1.0,0.5,0.6"
        assert (tmp_path / "run" / PLOT_FILE).exists()

    def test_reemit_replaces_directory(self, kernel_config, tmp_path):
        emit(_report(kernel_config, [SERIES]), tmp_path / "run")
        emit(_report(kernel_config), tmp_path / "run")
        assert sorted(p.name for p in (tmp_path / "run").iterdir()) == [REPORT_FILE]
        assert not any(p.name.startswith(".") for p in tmp_path.iterdir())

    def test_load_report(self, kernel_config, tmp_path):
        report = _report(kernel_config, [SERIES])
        emit(report, tmp_path / "run")
        loaded = load_report(tmp_path / "run")
        assert loaded.config == kernel_config
        assert loaded.series == report.series

    def test_unwritable_target(self, kernel_config, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        with pytest.raises(EmissionError):
            emit(_report(kernel_config), blocker / "run")

    def test_missing_report(self, tmp_path):
        with pytest.raises(EmissionError):
            load_report(tmp_path)


class TestSuiteSummary:
    def test_summary(self, kernel_config, tmp_path):
        report = _report(kernel_config)
        path = write_suite_summary([report], ["kernel_table"], tmp_path, 1.5)
        summary = json.loads(path.read_text())
        assert summary["passed"] is True
        assert summary["wall_time_s"] == 1.5
        assert summary["jobs"][0]["directory"] == "kernel_table"
        assert summary["jobs"][0]["config_hash"] == report.config_hash
