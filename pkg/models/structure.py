from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field as ModelField, field_validator, model_validator

from models.grid import Field

EDSKind = Literal["primary", "secondary", "theta_first", "theta_second", "boltzmann", "rdnm"]


class StructureParams(BaseModel):
    """Coefficients of the second dissipative structure and its modifications."""

    model_config = ConfigDict(frozen=True)

    alpha: float = ModelField(gt=0, description="Weight of u_x^2 in the second density")
    beta: float = ModelField(gt=0, description="Weight of v v_x^2 in the second density")
    theta: float = ModelField(default=0.0, ge=0, description="Weight of the w-terms; 0 disables them")
    gamma: float = ModelField(default=0.0, ge=0, description="Lower-bound constant for the second dissipation")


class EDSField(BaseModel):
    """Pointwise density, flux and dissipation of one structure."""

    model_config = ConfigDict(frozen=True)

    kind: EDSKind
    e: Field
    f: Field
    d: Field
    params_used: dict[str, float] = ModelField(default_factory=dict)
    floored_points: int = ModelField(default=0, description="Points where a concentration floor was applied")


class LocalizedSeries(BaseModel):
    """Weighted energies E, D, E~, D~ along a run for one (x0, T) pair."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    T: float = ModelField(gt=0)
    eps: float = ModelField(gt=0)
    x0: float
    times: np.ndarray
    E: np.ndarray
    D: np.ndarray
    Etilde: np.ndarray
    Dtilde: np.ndarray
    C0: float = ModelField(gt=0)

    @field_validator("times", "E", "D", "Etilde", "Dtilde", mode="before")
    @classmethod
    def _as_array(cls, v: object) -> np.ndarray:
        return np.asarray(v, dtype=float)

    @model_validator(mode="after")
    def _check(self) -> "LocalizedSeries":
        if abs(self.eps * np.sqrt(self.C0 * self.T) - 1.0) > 1e-9:
            raise ValueError("eps must equal 1/sqrt(C0 T)")
        for name in ("E", "D", "Etilde", "Dtilde"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise ValueError(f"{name} contains non-finite values")
        return self


class DecayFit(BaseModel):
    """Least-squares power law value ~ exp(intercept) * t**slope."""

    slope: float
    intercept: float
    window: tuple[float, float]
    r_squared: float = ModelField(ge=0.0, le=1.0)
    log_correction: bool = False
    samples: int = 0

    @model_validator(mode="after")
    def _check_window(self) -> "DecayFit":
        if not self.window[0] < self.window[1]:
            raise ValueError("window must satisfy t_lo < t_hi")
        return self

    def envelope(self, times: np.ndarray) -> np.ndarray:
        t = np.asarray(times, dtype=float)
        values = np.exp(self.intercept) * np.power(t, self.slope)
        if self.log_correction:
            values = values * np.log(2.0 + t)
        return values


class MarginReport(BaseModel):
    """Minimum slack of a pointwise inequality over a set of states."""

    name: str
    min_margin: float
    tolerance: float
    passed: bool
    worst_t: float | None = None
    worst_x: float | None = None
    detail: dict[str, float] = ModelField(default_factory=dict)


class ResidualReport(BaseModel):
    """Discrete residual of a balance law or evolution identity."""

    name: str
    norm: float
    times: list[float] = ModelField(default_factory=list)
    per_interval: list[float] = ModelField(default_factory=list)


class GronwallConstants(BaseModel):
    """Constants entering the localized-energy inequalities."""

    C0: float
    C1: float
    C2: float
    C3: float
    C4: float
    C5: float
    gamma: float
    R: float = ModelField(description="1 + sup|u0| + sup|v0|")


class GronwallReport(BaseModel):
    T: float
    x0: float
    energy_lhs: float
    energy_rhs: float
    energy_slack: float
    second_lhs: float
    second_rhs: float
    second_slack: float
    initial_bound_slack: float = ModelField(description="pi R^3/eps - E(0)")
    passed: bool
    tolerance: float


class SlavingReport(BaseModel):
    times: list[float]
    discrepancy: list[float]
    rho_norm: list[float]
    discrepancy_fit: DecayFit | None = None
    rho_fit: DecayFit | None = None
