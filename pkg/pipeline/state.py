import operator
from typing import Annotated, Any

from typing_extensions import TypedDict

from models.report import AcceptanceItem, Report
from models.scenario import ScenarioConfig
from pipeline.scenarios.base import Diagnosis


class ScenarioState(TypedDict, total=False):
    """Shared state passed between the stages of one scenario run."""

    # Input
    config: ScenarioConfig
    out_dir: str | None

    # prepare: grid, initial state, output times
    context: dict[str, Any]

    # simulate: trajectories and other raw results
    artifacts: dict[str, Any]

    # diagnose, then fit (fits and trivial series are folded in)
    diagnosis: Diagnosis

    # assess
    checks: list[AcceptanceItem]

    # report / failure_report
    report: Report | None

    # Pipeline metadata
    error: str | None
    failed_stage: str | None
    stage_metrics: dict[str, dict[str, float]]
    started: float


class SuiteState(TypedDict, total=False):
    """State of the acceptance suite: one job per config, reports merged on fan-in."""

    configs: list[ScenarioConfig]
    out_dir: str | None
    reports: Annotated[list[Report], operator.add]
    suite_time: float


class JobState(TypedDict):
    """Payload of one fanned-out suite job."""

    config: ScenarioConfig
    out_dir: str | None
