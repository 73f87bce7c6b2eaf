from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field as ModelField, model_validator

from models.grid import BoundaryCondition
from models.state import Params

ScenarioId = Literal[
    "equal_diff_decay",
    "unequal_diff_decay",
    "riemann_mixing",
    "fisher_counterexample",
    "neumann_interval",
    "kernel_table",
    "structure_sweep",
    "rdnm_decay",
]

ProfileName = Literal[
    "gaussian_bump",
    "riemann_smoothed",
    "random_smooth",
    "constant_pair",
    "fisher_pulse",
    "fisher_wave",
]


class GridSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    length: float = ModelField(gt=0)
    points: int = ModelField(ge=16)
    bc: BoundaryCondition = "periodic"


class ProfileSpec(BaseModel):
    """Named initial profile; options are profile specific (see pipeline.profiles)."""

    model_config = ConfigDict(frozen=True)

    name: ProfileName
    options: dict[str, float] = ModelField(default_factory=dict)


class OutputSpec(BaseModel):
    """Snapshot times: an optional linear head on [0, head_until] followed by the main range."""

    model_config = ConfigDict(frozen=True)

    spacing: Literal["linear", "log"] = "log"
    start: float = ModelField(gt=0)
    stop: float = ModelField(gt=0)
    count: int = ModelField(ge=2)
    head_until: float = ModelField(default=0.0, ge=0)
    head_count: int = ModelField(default=0, ge=0)

    @model_validator(mode="after")
    def _check(self) -> "OutputSpec":
        if self.stop <= self.start:
            raise ValueError("output stop must exceed start")
        return self

    def times(self) -> np.ndarray:
        if self.spacing == "log":
            main = np.geomspace(self.start, self.stop, self.count)
        else:
            main = np.linspace(self.start, self.stop, self.count)
        parts = [main]
        if self.head_count > 0 and self.head_until > 0:
            parts.append(np.linspace(0.0, self.head_until, self.head_count + 1)[1:])
        times = np.unique(np.concatenate(parts))
        return times[times > 0]


class FitWindow(BaseModel):
    model_config = ConfigDict(frozen=True)

    t_lo: float = ModelField(gt=0)
    t_hi: float = ModelField(gt=0)

    @model_validator(mode="after")
    def _check(self) -> "FitWindow":
        if self.t_hi <= self.t_lo:
            raise ValueError("fit window needs t_lo < t_hi")
        return self

    def as_tuple(self) -> tuple[float, float]:
        return self.t_lo, self.t_hi


class Tolerances(BaseModel):
    model_config = ConfigDict(frozen=True)

    tol_pos: float = ModelField(default=1e-10, gt=0)
    tol_bound: float = ModelField(default=1e-8, gt=0)
    tol_ineq: float = ModelField(default=1e-10, gt=0)
    tol_chi: float = ModelField(default=1e-9, gt=0)
    floor_den: float = ModelField(default=1e-14, gt=0)
    slope: float = ModelField(default=0.1, gt=0, description="Tolerance on t^(-1/2) slopes")
    rho_slope: float = ModelField(default=0.15, gt=0, description="Tolerance on t^(-1) slopes")
    second_order_slope: float = ModelField(default=0.2, gt=0, description="Tolerance on t^(-2) slopes")
    order: float = ModelField(default=0.3, gt=0, description="Tolerance on measured convergence orders")
    collapse: float = ModelField(default=0.02, gt=0)
    mass: float = ModelField(default=1e-8, gt=0)
    equilibrium: float = ModelField(default=1e-4, gt=0)
    r_squared_min: float = ModelField(default=0.99, gt=0, le=1)
    oracle_rel: float = ModelField(default=1e-10, gt=0)
    collinear: float = ModelField(default=1e-12, gt=0)
    boundedness_ratio: float = ModelField(default=3.0, gt=1)
    fisher_rho_floor: float = ModelField(default=0.1, gt=0)
    fisher_embedding: float = ModelField(default=1e-7, gt=0)


class GronwallOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    pairs: int = ModelField(default=12, ge=1)
    t_min: float = ModelField(default=10.0, gt=0)
    t_max: float | None = None
    early_until: float = ModelField(
        default=2.0, ge=0, description="End of the dense snapshot head used for the dissipation time integrals"
    )
    early_count: int = ModelField(default=400, ge=0)

    def early_times(self) -> np.ndarray:
        if self.early_until <= 0 or self.early_count == 0:
            return np.empty(0)
        return np.linspace(0.0, self.early_until, self.early_count + 1)[1:]


class RefinementOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    dt: float = ModelField(default=0.02, gt=0, description="Coarse step of the temporal study")
    horizon: float = ModelField(default=1.0, gt=0)
    spatial_points: int = ModelField(default=256, ge=16, description="Coarse grid of the spatial study")
    probe_states: int = ModelField(default=4096, ge=16)
    linearized_pairs: int = ModelField(default=6, ge=1)
    ode_samples: int = ModelField(default=100_000, ge=1)


class KernelOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    v_bar: float = ModelField(default=1.0, gt=0)
    t_lo: float = ModelField(default=10.0, gt=0)
    t_hi: float = ModelField(default=1000.0, gt=0)
    count: int = ModelField(default=24, ge=8)
    oracle_samples: int = ModelField(default=10_000, ge=1)
    xi_max: float = ModelField(default=4.0, gt=0)
    t_max: float = ModelField(default=10.0, gt=0)
    faster_than_power_slope: float = -3.0
    oracle_budget_s: float | None = ModelField(default=None, gt=0, description="Wall-clock limit of the oracle comparison")


class MixingOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    effective_dt: float = ModelField(default=0.1, gt=0)
    collapse_t1: float = ModelField(default=250.0, gt=0)
    collapse_span: float = ModelField(default=3.0, gt=0, description="Half-width of the similarity window in x/sqrt(t)")
    discrepancy_samples: int = ModelField(default=10, ge=3)


class FisherOptions(BaseModel):
    """Pulse refinement study and the window on which the wave is also run directly in (u, v)."""

    model_config = ConfigDict(frozen=True)

    pulse_length: float = ModelField(default=40.0, gt=0)
    pulse_points: int = ModelField(default=256, ge=16)
    embedding_horizon: float = ModelField(
        default=5.0, gt=0, description="Horizon of the direct (u, v) run compared with the z-variable run"
    )


class ScenarioConfig(BaseModel):
    """One scenario run; every constant that affects the numerics lives here."""

    model_config = ConfigDict(frozen=True)

    scenario: ScenarioId
    params: Params
    grid: GridSpec
    initial: ProfileSpec
    horizon: float = ModelField(gt=0)
    output: OutputSpec
    dt: float | None = ModelField(default=None, gt=0, description="Upper cap on the solver step")
    fit_window: FitWindow | None = None
    boundedness_window: FitWindow | None = ModelField(
        default=None, description="Window of the scaled-boundedness check; falls back to fit_window"
    )
    runtime_budget_s: float | None = ModelField(
        default=None, gt=0, description="Wall-clock limit from prepare to the end of assess"
    )
    expect_sharp: bool = ModelField(
        default=True, description="Require fitted slopes to match the predicted rate, not just bound it"
    )
    tolerances: Tolerances = ModelField(default_factory=Tolerances)
    seed: int = 0
    gronwall: GronwallOptions = ModelField(default_factory=GronwallOptions)
    refinement: RefinementOptions = ModelField(default_factory=RefinementOptions)
    kernel: KernelOptions = ModelField(default_factory=KernelOptions)
    mixing: MixingOptions = ModelField(default_factory=MixingOptions)
    fisher: FisherOptions = ModelField(default_factory=FisherOptions)
