"""Grid construction and second-order finite differences.

Periodic grids wrap around; Neumann grids use ghost reflection
f[-1] = f[1], f[n] = f[n-2], so every grid function is the restriction of
an even, 2L-periodic function.
"""

import numpy as np
from pydantic import ValidationError

from models.errors import ConfigurationError
from models.grid import BoundaryCondition, Field, Grid1D


def make_grid(length: float, points: int, bc: BoundaryCondition = "periodic") -> Grid1D:
    try:
        return Grid1D(length=length, points=points, bc=bc)
    except ValidationError as exc:
        raise ConfigurationError(f"invalid grid (L={length}, n={points}, bc={bc}): {exc}") from exc


def _neighbours(values: np.ndarray, bc: BoundaryCondition) -> tuple[np.ndarray, np.ndarray]:
    if bc == "periodic":
        return np.roll(values, 1), np.roll(values, -1)
    left = np.empty_like(values)
    right = np.empty_like(values)
    left[1:] = values[:-1]
    left[0] = values[1]
    right[:-1] = values[1:]
    right[-1] = values[-2]
    return left, right


def d1(values: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Central first difference on raw arrays (skew-symmetric on periodic grids)."""
    left, right = _neighbours(values, grid.bc)
    return (right - left) / (2.0 * grid.dx)


def d2(values: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Three-point second difference on raw arrays."""
    left, right = _neighbours(values, grid.bc)
    return (right - 2.0 * values + left) / grid.dx**2


def deriv1(f: Field) -> Field:
    return f.like(d1(f.values, f.grid))


def deriv2(f: Field) -> Field:
    return f.like(d2(f.values, f.grid))


def integrate(values: np.ndarray, grid: Grid1D) -> float:
    """Rectangle rule on periodic grids, trapezoid rule on Neumann grids."""
    return float(np.dot(grid.quadrature, values))


def centered(grid: Grid1D) -> np.ndarray:
    """Coordinates shifted so the domain midpoint sits at 0."""
    return grid.x - 0.5 * grid.length


def periodic_distance(x: np.ndarray, x0: float, grid: Grid1D) -> np.ndarray:
    """Distance to x0, using the minimum image on periodic grids."""
    if grid.bc == "periodic":
        half = 0.5 * grid.length
        return np.abs(np.mod(x - x0 + half, grid.length) - half)
    return np.abs(x - x0)
