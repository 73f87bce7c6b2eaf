"""Uniformly local (windowed) norms."""

import logging

import numpy as np
from scipy import fft

from models.errors import ConfigurationError
from models.grid import Field, Grid1D, WindowedNorm

logger = logging.getLogger(__name__)


def window_weights(dx: float, radius: float) -> np.ndarray:
    """Overlap of each grid cell [x_j - dx/2, x_j + dx/2] with [-radius, radius].

    Offsets run from -m to m. A constant integrates to exactly 2*radius and a
    single-point spike to its height times dx.
    """
    m = int(np.ceil(radius / dx + 0.5))
    j = np.arange(-m, m + 1)
    lo = np.maximum(-radius, (j - 0.5) * dx)
    hi = np.minimum(radius, (j + 0.5) * dx)
    return np.clip(hi - lo, 0.0, None)


def windowed_sums(values: np.ndarray, grid: Grid1D, radius: float) -> np.ndarray:
    """Window integral of `values` centred at every grid point."""
    weights = window_weights(grid.dx, radius)
    m = (weights.size - 1) // 2
    if grid.bc == "periodic":
        signal = values
    else:
        # even extension with period 2(n-1) realises the ghost reflection
        signal = np.concatenate([values, values[-2:0:-1]])
    period = signal.size
    kernel = np.zeros(period)
    np.add.at(kernel, np.arange(-m, m + 1) % period, weights)
    sums = fft.irfft(fft.rfft(signal) * fft.rfft(kernel), n=period)
    return sums[: grid.points]


def ul_norm(f: Field, p: float, radius: float) -> WindowedNorm:
    if p < 1:
        raise ConfigurationError(f"ul_norm needs p >= 1, got {p}")
    if radius <= 0:
        raise ConfigurationError(f"ul_norm needs radius > 0, got {radius}")
    grid = f.grid
    clamped = False
    if radius > 0.5 * grid.length:
        logger.warning("window radius %.4g exceeds L/2 = %.4g, clamping", radius, 0.5 * grid.length)
        radius = 0.5 * grid.length
        clamped = True
    if np.isinf(p):
        return WindowedNorm(value=f.max_abs(), p=p, radius=radius, clamped=clamped)
    sums = windowed_sums(np.abs(f.values) ** p, grid, radius)
    peak = max(float(sums.max()), 0.0)
    return WindowedNorm(value=peak ** (1.0 / p), p=p, radius=radius, clamped=clamped)
