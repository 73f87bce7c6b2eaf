"""Helpers shared by the stage nodes."""

import logging

from pydantic import ValidationError

from models.errors import LabError
from pipeline.state import ScenarioState

logger = logging.getLogger(__name__)

# errors a stage turns into a failed report; anything else propagates
STAGE_ERRORS = (LabError, ValidationError)


def with_metrics(state: ScenarioState, stage: str, metrics: dict[str, float]) -> dict[str, dict[str, float]]:
    return {**state.get("stage_metrics", {}), stage: metrics}


def stage_failure(state: ScenarioState, stage: str, exc: Exception, metrics: dict[str, float]) -> dict:
    """State update routing the run to the failure report."""
    logger.warning("%s failed in %s: %s", state["config"].scenario, stage, exc)
    return {
        "error": f"{type(exc).__name__}: {exc}",
        "failed_stage": stage,
        "stage_metrics": with_metrics(state, stage, metrics),
    }
