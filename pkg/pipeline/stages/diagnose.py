"""Diagnose stage: series, tables, margins and measurements from the raw results."""

from pipeline.metrics import StageTimer
from pipeline.scenarios import get_handler
from pipeline.stages.base import STAGE_ERRORS, stage_failure, with_metrics
from pipeline.state import ScenarioState


def run_diagnose(state: ScenarioState) -> dict:
    cfg = state["config"]
    timer = StageTimer("diagnose")
    try:
        with timer:
            diagnosis = get_handler(cfg.scenario).diagnose(cfg, state["context"], state["artifacts"])
            timer.record(series=len(diagnosis.series), measurements=len(diagnosis.measurements))
    except STAGE_ERRORS as exc:
        return stage_failure(state, "diagnose", exc, timer.metrics)
    return {"diagnosis": diagnosis, "stage_metrics": with_metrics(state, "diagnose", timer.metrics)}
