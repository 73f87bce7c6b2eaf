"""Prepare stage: grid, initial state and snapshot times."""

from domain.grid import make_grid
from pipeline.metrics import StageTimer
from pipeline.profiles import profile
from pipeline.scenarios.base import output_times
from pipeline.stages.base import STAGE_ERRORS, stage_failure, with_metrics
from pipeline.state import ScenarioState


def run_prepare(state: ScenarioState) -> dict:
    cfg = state["config"]
    timer = StageTimer("prepare")
    try:
        with timer:
            grid = make_grid(cfg.grid.length, cfg.grid.points, cfg.grid.bc)
            initial = profile(cfg.initial, grid, cfg.seed)
            times = output_times(cfg)
            timer.record(points=grid.points, output_times=len(times))
    except STAGE_ERRORS as exc:
        return stage_failure(state, "prepare", exc, timer.metrics)
    return {
        "context": {"grid": grid, "initial": initial, "output_times": times},
        "stage_metrics": with_metrics(state, "prepare", timer.metrics),
    }
