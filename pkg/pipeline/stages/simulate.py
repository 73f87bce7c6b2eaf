"""Simulate stage: hands the prepared context to the scenario handler."""

import logging

from models.state import Trajectory
from pipeline.metrics import StageTimer
from pipeline.scenarios import get_handler
from pipeline.stages.base import STAGE_ERRORS, stage_failure, with_metrics
from pipeline.state import ScenarioState

logger = logging.getLogger(__name__)


def run_simulate(state: ScenarioState) -> dict:
    cfg = state["config"]
    timer = StageTimer("simulate")
    try:
        with timer:
            artifacts = get_handler(cfg.scenario).simulate(cfg, state["context"])
            traj = artifacts.get("trajectory")
            if isinstance(traj, Trajectory):
                timer.record(snapshots=len(traj.snapshots), steps=sum(traj.substeps), dt=traj.dt)
    except STAGE_ERRORS as exc:
        return stage_failure(state, "simulate", exc, timer.metrics)
    logger.info("%s: simulated in %.0f ms", cfg.scenario, timer.metrics["latency_ms"])
    return {"artifacts": artifacts, "stage_metrics": with_metrics(state, "simulate", timer.metrics)}
