"""Effective scalar diffusion w_t = (D(w) w_x)_x with D(w) = a + (b - a)/sqrt(1 + 8w).

D interpolates between b (w = 0, all mass in B) and a (w large, mostly A).
"""

import logging
import math

import numpy as np
from scipy.sparse import csc_matrix, diags
from scipy.sparse.linalg import spsolve

from domain.grid import integrate
from models.errors import ConfigurationError, IntegrationError, PositivityViolation
from models.grid import Field, Grid1D
from models.state import Params, ScalarTrajectory, Trajectory

logger = logging.getLogger(__name__)


def effective_diffusivity(w: np.ndarray | float, p: Params) -> np.ndarray:
    return p.a + (p.b - p.a) / np.sqrt(1.0 + 8.0 * np.asarray(w, dtype=float))


def _operator(w: np.ndarray, grid: Grid1D, p: Params) -> csc_matrix:
    """Matrix of w -> (D_face w_x)_x with arithmetic face averages of D."""
    n = grid.points
    D = effective_diffusivity(np.maximum(w, 0.0), p)
    h2 = grid.dx**2
    if grid.bc == "periodic":
        face = 0.5 * (D + np.roll(D, -1))  # face j + 1/2
        left = np.roll(face, 1)
        op = diags(
            [face[:-1] / h2, -(face + left) / h2, left[1:] / h2],
            [1, 0, -1],
            format="lil",
        )
        op[n - 1, 0] = face[n - 1] / h2
        op[0, n - 1] = left[0] / h2
        return csc_matrix(op)
    face = 0.5 * (D[:-1] + D[1:])
    upper = face.copy()
    lower = face.copy()
    main = np.zeros(n)
    main[:-1] -= face
    main[1:] -= face
    # end points own half cells
    upper[0] *= 2.0
    lower[-1] *= 2.0
    main[0] *= 2.0
    main[-1] *= 2.0
    return csc_matrix(diags([upper / h2, main / h2, lower / h2], [1, 0, -1]))


def simulate_effective_diffusion(
    w0: Field,
    p: Params,
    T: float,
    output_times: np.ndarray | list[float] | None = None,
    dt: float = 0.1,
    tol_pos: float = 1e-10,
) -> ScalarTrajectory:
    """Conservative finite volumes, linearly implicit in time.

    Each step solves (I - dt A(w^n)) w^{n+1} = w^n. A(w^n) has zero column
    sums in the quadrature weights and nonnegative off-diagonals, so mass is
    conserved and w stays nonnegative.
    """
    if T <= 0 or dt <= 0:
        raise ConfigurationError(f"need T > 0 and dt > 0, got T={T}, dt={dt}")
    if float(w0.values.min()) < -tol_pos:
        raise PositivityViolation("w", float(w0.values.min()), 0.0)
    grid = w0.grid
    targets = np.asarray(output_times if output_times is not None else [T], dtype=float)
    targets = targets[(targets > 0) & (targets <= T + 1e-12)]
    if targets.size == 0 or targets[-1] < T - 1e-12:
        targets = np.append(targets, T)

    identity = diags([np.ones(grid.points)], [0], format="csc")
    w, t = w0.values.copy(), 0.0
    times, fields = [0.0], [w0]
    for target in targets:
        span = target - t
        steps = max(1, math.ceil(span / dt - 1e-9))
        h = span / steps
        for _ in range(steps):
            w = spsolve(csc_matrix(identity - h * _operator(w, grid, p)), w)
            t += h
        if not np.all(np.isfinite(w)):
            raise IntegrationError("non-finite density", t)
        low = float(w.min())
        if low < -tol_pos:
            raise PositivityViolation("w", low, t)
        t = float(target)
        times.append(t)
        fields.append(Field(grid=grid, values=w))
    logger.debug("effective diffusion: %d snapshots to t=%.4g", len(times), t)
    return ScalarTrajectory(times=tuple(times), fields=tuple(fields), params=p, dt=dt)


def mass(values: np.ndarray, grid: Grid1D) -> float:
    return integrate(values, grid)


def self_similar_collapse(
    times: np.ndarray,
    profiles: np.ndarray,
    grid: Grid1D,
    t1: float,
    centre: float,
    span: float = 3.0,
) -> float:
    """Sup-norm mismatch between w(., t1) and w(., 4 t1) in the variable (x - centre)/sqrt(t).

    Compared on |(x - centre)/sqrt(t)| <= span, relative to the jump of the
    profile at t1.
    """
    times = np.asarray(times, dtype=float)
    i1 = int(np.argmin(np.abs(times - t1)))
    i2 = int(np.argmin(np.abs(times - 4.0 * t1)))
    if abs(times[i1] - t1) > 1e-9 * max(1.0, t1) or abs(times[i2] - 4.0 * t1) > 1e-9 * max(1.0, t1):
        raise ConfigurationError(f"collapse needs snapshots at t={t1} and t={4.0 * t1}")
    x = grid.x
    eta1 = (x - centre) / math.sqrt(times[i1])
    eta2 = (x - centre) / math.sqrt(times[i2])
    window = np.abs(eta1) <= span
    if np.count_nonzero(window) < 4:
        raise ConfigurationError("collapse window contains too few grid points")
    if float(np.max(np.abs(eta2))) < span:
        raise ConfigurationError("collapse window exceeds the domain at the later time")
    late = np.interp(eta1[window], eta2, profiles[i2])
    early = profiles[i1][window]
    scale = float(np.ptp(profiles[i1])) or 1.0
    return float(np.max(np.abs(late - early))) / scale


def effective_discrepancy(full: Trajectory, effective: ScalarTrajectory) -> tuple[np.ndarray, np.ndarray]:
    """(times, sup |(2u + v) - w|) at the times both runs share."""
    eff_times = np.asarray(effective.times)
    eff = effective.matrix()
    out_t, out_d = [], []
    for s in full.snapshots:
        j = int(np.argmin(np.abs(eff_times - s.t)))
        if abs(eff_times[j] - s.t) > 1e-9 * max(1.0, s.t):
            continue
        w_full = 2.0 * s.u.values + s.v.values
        out_t.append(s.t)
        out_d.append(float(np.max(np.abs(w_full - eff[j]))))
    if not out_t:
        raise ConfigurationError("full and effective runs share no snapshot times")
    return np.array(out_t), np.array(out_d)
