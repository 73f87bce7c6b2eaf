from datetime import datetime, timezone

from pydantic import BaseModel, ConfigDict, Field as ModelField

from models.scenario import ScenarioConfig, ScenarioId
from models.structure import DecayFit

SCHEMA_VERSION = "1.0"


class TimeSeries(BaseModel):
    """One diagnostic series; emitted as a CSV with columns t, value, envelope."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    name: str
    times: list[float]
    values: list[float]
    envelope: list[float] | None = None


class AcceptanceItem(BaseModel):
    """A single pass/fail verdict together with the tolerance it was judged against."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    name: str = ModelField(description="Short identifier, e.g. slope_u_x")
    passed: bool
    value: float | None = ModelField(default=None, description="Measured quantity")
    target: str = ModelField(default="", description="Human-readable target, e.g. '-0.5 +/- 0.1'")
    tolerance: float = ModelField(description="Tolerance used for the verdict")
    detail: str = ""


class Report(BaseModel):
    """Self-contained result of one scenario run."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    schema_version: str = SCHEMA_VERSION
    scenario: ScenarioId
    claim: str = ModelField(description="The property this scenario tests")
    config: ScenarioConfig
    config_hash: str = ModelField(description="git blob hash of the canonical config JSON")
    results_digest: str = ModelField(default="", description="sha256 of the numeric content")
    series: list[TimeSeries] = ModelField(default_factory=list)
    fits: dict[str, DecayFit] = ModelField(default_factory=dict)
    tables: dict[str, list[dict[str, float]]] = ModelField(default_factory=dict)
    measurements: dict[str, float | str | bool] = ModelField(default_factory=dict)
    checks: list[AcceptanceItem] = ModelField(default_factory=list)
    passed: bool = False
    error: str | None = None
    failed_stage: str | None = None
    wall_time_s: float = 0.0
    stage_metrics: dict[str, dict[str, float]] = ModelField(default_factory=dict)
    generated_at: datetime = ModelField(default_factory=lambda: datetime.now(timezone.utc))
