from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field as ModelField, field_validator, model_validator

BoundaryCondition = Literal["periodic", "neumann"]

MIN_POINTS = 16


def _frozen_array(values: object) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


class Grid1D(BaseModel):
    """Uniform grid on [0, L). Neumann grids include both end points."""

    model_config = ConfigDict(frozen=True)

    length: float = ModelField(gt=0, description="Domain length L")
    points: int = ModelField(ge=MIN_POINTS, description="Number of grid points n")
    bc: BoundaryCondition = ModelField(default="periodic", description="Boundary treatment")

    @property
    def dx(self) -> float:
        if self.bc == "periodic":
            return self.length / self.points
        return self.length / (self.points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.points) * self.dx

    @property
    def quadrature(self) -> np.ndarray:
        """Weights w with sum(w * f) approximating the integral of f."""
        w = np.full(self.points, self.dx)
        if self.bc == "neumann":
            w[0] = w[-1] = 0.5 * self.dx
        return w


class Field(BaseModel):
    """A scalar grid function."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: Grid1D
    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def _as_array(cls, v: object) -> np.ndarray:
        return _frozen_array(v)

    @model_validator(mode="after")
    def _check(self) -> "Field":
        if self.values.shape != (self.grid.points,):
            raise ValueError(
                f"values shape {self.values.shape} does not match grid of {self.grid.points} points"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field contains non-finite values")
        return self

    def like(self, values: np.ndarray) -> "Field":
        return Field(grid=self.grid, values=values)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


class WeightField(BaseModel):
    """Localization weight chi(x) = sech(eps (x - x0)) sampled on a grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    eps: float = ModelField(gt=0)
    x0: float
    values: Field

    @model_validator(mode="after")
    def _check(self) -> "WeightField":
        chi = self.values.values
        if np.any(chi <= 0) or np.any(chi > 1.0):
            raise ValueError("weight values must lie in (0, 1]")
        return self

    @property
    def grid(self) -> Grid1D:
        return self.values.grid


class WindowedNorm(BaseModel):
    """Uniformly local norm: sup over window centres of the windowed L^p norm."""

    value: float = ModelField(ge=0)
    p: float = ModelField(ge=1)
    radius: float = ModelField(gt=0, description="Window half-width actually used")
    clamped: bool = ModelField(default=False, description="Requested radius exceeded L/2 and was reduced")
