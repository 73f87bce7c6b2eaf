"""Assess stage: slope checks for the required fits, then the handler's own rules."""

import time

from pipeline.metrics import StageTimer
from pipeline.scenarios import get_handler
from pipeline.stages.base import STAGE_ERRORS, stage_failure, with_metrics
from pipeline.state import ScenarioState
from rules.acceptance import check_at_most, check_slope


def run_assess(state: ScenarioState) -> dict:
    cfg = state["config"]
    diagnosis = state["diagnosis"]
    handler = get_handler(cfg.scenario)
    timer = StageTimer("assess")
    try:
        with timer:
            checks = [
                check_slope(
                    f"slope_{request.series}",
                    diagnosis.fits.get(request.series),
                    request.target,
                    getattr(cfg.tolerances, request.tolerance),
                    sharp=cfg.expect_sharp,
                    trivial=request.series in diagnosis.zero_series,
                )
                for request in handler.fit_requests(cfg)
                if not request.informational
            ]
            checks += handler.assess(cfg, diagnosis)
            if cfg.runtime_budget_s is not None and "started" in state:
                elapsed = time.perf_counter() - state["started"]
                checks.append(
                    check_at_most("runtime_budget", elapsed, cfg.runtime_budget_s, "seconds from prepare to assess")
                )
            timer.record(checks=len(checks), failed=sum(not c.passed for c in checks))
    except STAGE_ERRORS as exc:
        return stage_failure(state, "assess", exc, timer.metrics)
    return {"checks": checks, "stage_metrics": with_metrics(state, "assess", timer.metrics)}
