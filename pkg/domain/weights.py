"""Localization weights chi(x) = sech(eps (x - x0)) and weighted integrals."""

import numpy as np
from pydantic import ValidationError

from domain.grid import d1, d2, periodic_distance
from models.errors import ConfigurationError
from models.grid import Field, Grid1D, WeightField
from models.structure import MarginReport


def weight_chi(grid: Grid1D, eps: float, x0: float) -> WeightField:
    """Sample chi on the grid, centred on the grid point nearest x0 so that chi = 1 there."""
    if eps <= 0:
        raise ConfigurationError(f"weight needs eps > 0, got {eps}")
    x = grid.x
    centre = float(x[np.argmin(periodic_distance(x, x0, grid))])
    z = eps * periodic_distance(x, centre, grid)
    # sech(z) = 2 e^-z / (1 + e^-2z), no overflow for large z
    decay = np.exp(-z)
    chi = 2.0 * decay / (1.0 + decay * decay)
    try:
        return WeightField(eps=eps, x0=centre, values=Field(grid=grid, values=chi))
    except ValidationError as exc:
        raise ConfigurationError(f"eps*L too large for a positive weight (eps={eps}, L={grid.length})") from exc


def weighted_integral(f: Field, w: WeightField) -> float:
    if f.grid != w.grid:
        raise ConfigurationError("field and weight live on different grids")
    return float(np.dot(w.grid.quadrature, f.values * w.values.values))


def weighted_integral_values(values: np.ndarray, w: WeightField) -> float:
    """Same as weighted_integral for a raw array already on the weight's grid."""
    return float(np.dot(w.grid.quadrature, values * w.values.values))


def _interior_mask(w: WeightField) -> np.ndarray:
    grid = w.grid
    mask = np.ones(grid.points, dtype=bool)
    if grid.bc == "neumann":
        mask[0] = mask[-1] = False
        return mask
    # the periodic image of chi has a kink at the antipode of x0
    seam = periodic_distance(grid.x, w.x0 + 0.5 * grid.length, grid)
    mask[seam <= 1.5 * grid.dx] = False
    return mask


def chi_bound_check(w: WeightField, tol_chi: float = 1e-9) -> MarginReport:
    """Check |chi'| <= eps chi and |chi''| <= eps^2 chi at interior points.

    The sampled exponential tail exceeds the continuum bounds by a relative
    O((eps dx)^2) stencil error, so that amount is added to tol_chi.
    """
    chi = w.values.values
    grid = w.grid
    mask = _interior_mask(w)
    first = np.abs(d1(chi, grid))[mask] / (w.eps * chi[mask]) - 1.0
    second = np.abs(d2(chi, grid))[mask] / (w.eps**2 * chi[mask]) - 1.0
    tolerance = tol_chi + (w.eps * grid.dx) ** 2 / 3.0
    worst = max(float(first.max()), float(second.max()))
    return MarginReport(
        name="chi_bounds",
        min_margin=-worst,
        tolerance=tolerance,
        passed=worst <= tolerance,
        detail={"first_excess": float(first.max()), "second_excess": float(second.max())},
    )
