"""Derived fields: distance to chemical balance, total mass density, time derivatives."""

import numpy as np

from domain.grid import d1, d2
from dynamics.imex import rd_rhs
from models.grid import Field
from models.state import Params, State, Trajectory
from models.structure import ResidualReport


def extract_rho(s: State) -> Field:
    """rho = u - v^2."""
    return s.u.like(s.u.values - s.v.values**2)


def extract_w(s: State) -> Field:
    """w = 2u + v."""
    return s.u.like(2.0 * s.u.values + s.v.values)


def rho_rhs(u: np.ndarray, v: np.ndarray, p: Params, grid) -> np.ndarray:
    """rho_t = a rho_xx - k(1 + 4v) rho + 2(a - b) v v_xx + 2a v_x^2."""
    rho = u - v**2
    vx = d1(v, grid)
    return (
        p.a * d2(rho, grid)
        - p.k * (1.0 + 4.0 * v) * rho
        + 2.0 * (p.a - p.b) * v * d2(v, grid)
        + 2.0 * p.a * vx**2
    )


def w_residual(traj: Trajectory) -> ResidualReport:
    """Residual of w_t = a w_xx between consecutive snapshots (meaningful for a = b)."""
    grid = traj.grid
    times = traj.times
    w = 2.0 * traj.u_matrix() + traj.v_matrix()
    per_interval = []
    for i in range(len(times) - 1):
        dt = times[i + 1] - times[i]
        lap = 0.5 * (d2(w[i], grid) + d2(w[i + 1], grid))
        r = (w[i + 1] - w[i]) / dt - traj.params.a * lap
        per_interval.append(float(np.max(np.abs(r))))
    return ResidualReport(
        name="w_heat",
        norm=max(per_interval, default=0.0),
        times=[float(t) for t in times[:-1]],
        per_interval=per_interval,
    )


def instantaneous_rhs_fields(s: State, p: Params) -> dict[str, np.ndarray]:
    """u_t, v_t, w_t, rho_t evaluated from the right-hand sides, never by time differencing."""
    ut, vt = rd_rhs(s, p)
    v = s.v.values
    return {
        "u_t": ut,
        "v_t": vt,
        "w_t": 2.0 * ut + vt,
        "rho_t": ut - 2.0 * v * vt,
    }
