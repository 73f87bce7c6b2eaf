"""Decay series of a run and power-law fits."""

import logging
import math

import numpy as np
from scipy.optimize import minimize_scalar

from domain.grid import d1, periodic_distance
from domain.norms import ul_norm
from models.errors import ConfigurationError, FitError
from models.grid import Field
from models.state import State, Trajectory
from models.structure import DecayFit

logger = logging.getLogger(__name__)

MIN_FIT_SAMPLES = 8


def decay_fit(
    times,
    values,
    window: tuple[float, float],
    log_correction: bool = False,
    min_samples: int = MIN_FIT_SAMPLES,
) -> DecayFit:
    """Least squares of log(value) against log(t) on t_lo <= t <= t_hi.

    With log_correction the values are divided by log(2 + t) first.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    t_lo, t_hi = window
    if not t_lo < t_hi:
        raise FitError(f"empty fit window [{t_lo}, {t_hi}]")
    inside = (t >= t_lo * (1 - 1e-12)) & (t <= t_hi * (1 + 1e-12))
    t, y = t[inside], y[inside]
    if t.size < min_samples:
        raise FitError(f"{t.size} samples in [{t_lo:.4g}, {t_hi:.4g}], need {min_samples}")
    if np.any(y <= 0) or np.any(t <= 0):
        raise FitError("power-law fit needs positive times and values")
    if log_correction:
        y = y / np.log(2.0 + t)
    x, z = np.log(t), np.log(y)
    slope, intercept = np.polyfit(x, z, 1)
    residual = z - (slope * x + intercept)
    total = float(np.sum((z - z.mean()) ** 2))
    r_squared = 1.0 if total == 0.0 else 1.0 - float(np.sum(residual**2)) / total
    return DecayFit(
        slope=float(slope),
        intercept=float(intercept),
        window=(float(t_lo), float(t_hi)),
        r_squared=min(max(r_squared, 0.0), 1.0),
        log_correction=log_correction,
        samples=int(t.size),
    )


def log_linear_fit(times, values) -> tuple[float, float]:
    """(rate, r^2) of log(value) ~ -rate * t, for exponential convergence."""
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    if t.size < 3 or np.any(y <= 0):
        raise FitError("log-linear fit needs at least 3 positive samples")
    z = np.log(y)
    slope, intercept = np.polyfit(t, z, 1)
    residual = z - (slope * t + intercept)
    total = float(np.sum((z - z.mean()) ** 2))
    r_squared = 1.0 if total == 0.0 else 1.0 - float(np.sum(residual**2)) / total
    return float(-slope), r_squared


def sup_series(traj: Trajectory, quantity) -> tuple[np.ndarray, np.ndarray]:
    """(times, sup_x |quantity(state)|) over the snapshots."""
    values = [float(np.max(np.abs(quantity(s)))) for s in traj.snapshots]
    return traj.times, np.array(values)


def ul_decay_series(traj: Trajectory) -> tuple[np.ndarray, np.ndarray]:
    """sup over x0 of the integral of u_x^2 + v_x^2 + |u - v^2| on [x0 - sqrt(t), x0 + sqrt(t)].

    Snapshots at t = 0 are skipped.
    """
    times, values = [], []
    for s in traj.snapshots:
        if s.t <= 0:
            continue
        u, v, grid = s.u.values, s.v.values, s.grid
        density = d1(u, grid) ** 2 + d1(v, grid) ** 2 + np.abs(u - v**2)
        radius = min(math.sqrt(s.t), 0.5 * grid.length)
        times.append(s.t)
        values.append(ul_norm(Field(grid=grid, values=density), 1.0, radius).value)
    return np.array(times), np.array(values)


def equilibrium_distance(s: State, x0: float, radius: float) -> float:
    """inf over v_bar >= 0 of sup on |x - x0| <= radius of |u - v_bar^2| + |v - v_bar|."""
    if radius <= 0:
        raise ConfigurationError(f"radius must be positive, got {radius}")
    grid = s.grid
    near = periodic_distance(grid.x, x0, grid) <= radius
    if not np.any(near):
        raise ConfigurationError("window contains no grid point")
    u, v = s.u.values[near], s.v.values[near]

    def gap(v_bar: float) -> float:
        return float(np.max(np.abs(u - v_bar**2) + np.abs(v - v_bar)))

    top = max(float(v.max()), math.sqrt(max(float(u.max()), 0.0))) + 1.0
    candidates = np.linspace(0.0, top, 257)
    best = candidates[int(np.argmin([gap(c) for c in candidates]))]
    step = candidates[1] - candidates[0]
    refined = minimize_scalar(
        gap, bounds=(max(0.0, best - step), best + step), method="bounded", options={"xatol": 1e-12}
    )
    return min(gap(best), float(refined.fun))
