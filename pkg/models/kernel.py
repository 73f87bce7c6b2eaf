from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field as ModelField, field_validator, model_validator

from models.structure import DecayFit

Projection = Literal["full", "M_right", "N_left", "N_M"]


class KernelParams(BaseModel):
    """Coefficients of the system linearized at the equilibrium (v_bar**2, v_bar)."""

    model_config = ConfigDict(frozen=True)

    a: float = ModelField(gt=0)
    b: float = ModelField(gt=0)
    k: float = ModelField(gt=0)
    v_bar: float = ModelField(gt=0)

    @property
    def k1(self) -> float:
        return self.k

    @property
    def k2(self) -> float:
        return 4.0 * self.k * self.v_bar

    @property
    def mu(self) -> float:
        return 0.5 * (self.a + self.b)

    @property
    def nu(self) -> float:
        return 0.5 * (self.a - self.b)

    @property
    def kappa(self) -> float:
        return 0.5 * (self.k1 + self.k2)

    @property
    def ell(self) -> float:
        return 0.5 * (self.k1 - self.k2)

    @property
    def M(self) -> np.ndarray:
        """Reaction direction (k1, -k2)."""
        return np.array([self.k1, -self.k2])

    @property
    def N(self) -> np.ndarray:
        return np.array([-1.0, 1.0])


class SpectralKernel(BaseModel):
    """Sampled symbol S^(xi, t) and, optionally, the physical kernel S(x, t)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: KernelParams
    t: float = ModelField(gt=0)
    xi_grid: np.ndarray
    matrices: np.ndarray
    x_grid: np.ndarray | None = None
    physical: np.ndarray | None = None

    @field_validator("xi_grid", "matrices", mode="before")
    @classmethod
    def _as_array(cls, v: object) -> np.ndarray:
        return np.asarray(v, dtype=float)

    @model_validator(mode="after")
    def _check(self) -> "SpectralKernel":
        if self.matrices.shape != (self.xi_grid.size, 2, 2):
            raise ValueError("matrices must have shape (len(xi_grid), 2, 2)")
        if not np.all(np.isfinite(self.matrices)):
            raise ValueError("symbol contains non-finite entries")
        return self


class SymbolActions(BaseModel):
    """S^ M, N^T S^ and N^T S^ M sampled on a xi array."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    SM: np.ndarray
    NS: np.ndarray
    NSM: np.ndarray


class KernelDecay(BaseModel):
    """L1 norms of a kernel projection over time, with the fitted power law."""

    projection: Projection
    m: int = ModelField(ge=0, le=2)
    times: list[float]
    l1_norms: list[float]
    envelope: list[float] = ModelField(description="Envelope shape t^(-m/2)(...) scaled by the measured constant")
    envelope_constant: float
    fit: DecayFit | None = None
    faster_than_power: bool = ModelField(
        default=False, description="Norms underflow inside the window; decay beats every power"
    )
