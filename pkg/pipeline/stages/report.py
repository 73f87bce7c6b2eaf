"""Report stage: assembles the Report of a run, completed or failed."""

import logging
import time

import numpy as np

from models.report import Report
from pipeline.emit import config_hash, results_digest
from pipeline.metrics import StageTimer
from pipeline.scenarios import get_handler
from pipeline.state import ScenarioState
from rules.acceptance import all_passed

logger = logging.getLogger(__name__)


def _plain(value):
    if isinstance(value, np.generic):
        return value.item()
    return value


def _build(state: ScenarioState, passed: bool) -> Report:
    cfg = state["config"]
    diagnosis = state.get("diagnosis")
    report = Report(
        scenario=cfg.scenario,
        claim=get_handler(cfg.scenario).CLAIM,
        config=cfg,
        config_hash=config_hash(cfg),
        series=diagnosis.series if diagnosis else [],
        fits=diagnosis.fits if diagnosis else {},
        tables=(
            {name: [{k: float(v) for k, v in row.items()} for row in rows] for name, rows in diagnosis.tables.items()}
            if diagnosis
            else {}
        ),
        measurements={k: _plain(v) for k, v in diagnosis.measurements.items()} if diagnosis else {},
        checks=state.get("checks", []),
        passed=passed,
        error=state.get("error"),
        failed_stage=state.get("failed_stage"),
        wall_time_s=time.perf_counter() - state.get("started", time.perf_counter()),
    )
    return report.model_copy(update={"results_digest": results_digest(report)})


def run_report(state: ScenarioState) -> dict:
    """Report of a run that reached the end of the assess stage."""
    with StageTimer("report") as timer:
        checks = state.get("checks", [])
        report = _build(state, all_passed(checks))
    metrics = {**state.get("stage_metrics", {}), "report": timer.metrics}
    report = report.model_copy(update={"stage_metrics": metrics})
    logger.info(
        "%s: %s (%d/%d checks)",
        report.scenario,
        "PASS" if report.passed else "FAIL",
        sum(c.passed for c in checks),
        len(checks),
    )
    return {"report": report, "stage_metrics": metrics}


def run_failure_report(state: ScenarioState) -> dict:
    """Report of a run stopped by an error; whatever was diagnosed so far is kept."""
    with StageTimer("failure_report") as timer:
        report = _build(state, False)
    metrics = {**state.get("stage_metrics", {}), "failure_report": timer.metrics}
    report = report.model_copy(update={"stage_metrics": metrics})
    logger.error("%s: ERROR in %s: %s", report.scenario, report.failed_stage, report.error)
    return {"report": report, "stage_metrics": metrics}
