"""Diagnostics shared by the decay scenarios."""

import math

import numpy as np

from domain.grid import d1, d2
from dynamics.imex import simulate_rd
from models.scenario import ScenarioConfig
from models.state import Trajectory
from models.structure import MarginReport, StructureParams
from pipeline.scenarios.base import make_series, positive_times
from structures.checks import dpos_check, flux_bound_check, ordering_check, positivity_check
from structures.decay import equilibrium_distance, sup_series

QUASI_RADIUS = 10.0


def run_full(cfg: ScenarioConfig, context: dict) -> Trajectory:
    tol = cfg.tolerances
    return simulate_rd(
        context["initial"],
        cfg.params,
        cfg.horizon,
        context["output_times"],
        dt=cfg.dt,
        tol_pos=tol.tol_pos,
        tol_bound=tol.tol_bound,
    )


def gradient_series(traj: Trajectory) -> list:
    """sup |u_x|, sup |v_x|, sup |rho| and sup |u_xx| at every positive snapshot time."""
    grid = traj.grid
    quantities = {
        "u_x_sup": lambda s: d1(s.u.values, grid),
        "v_x_sup": lambda s: d1(s.v.values, grid),
        "rho_sup": lambda s: s.u.values - s.v.values**2,
        "u_xx_sup": lambda s: d2(s.u.values, grid),
    }
    out = []
    for name, quantity in quantities.items():
        times, values = positive_times(*sup_series(traj, quantity))
        out.append(make_series(name, times, values))
    return out


def quasiconvergence_series(traj: Trajectory, centre: float, radius: float = QUASI_RADIUS):
    """Distance to the equilibrium manifold on a fixed window around `centre`."""
    radius = min(radius, 0.5 * traj.grid.length)
    times, values = [], []
    for s in traj.snapshots:
        if s.t <= 0:
            continue
        times.append(s.t)
        values.append(equilibrium_distance(s, centre, radius))
    return make_series("equilibrium_distance", times, values)


def structure_margins(source: Trajectory | list, sp: StructureParams, cfg: ScenarioConfig) -> dict[str, MarginReport]:
    p, tol = cfg.params, cfg.tolerances
    return {
        "primary_signs": positivity_check(source, p, tol.tol_pos),
        "flux_bound": flux_bound_check(source, p, tol.tol_ineq),
        "ordering": ordering_check(source, p, sp, tol.tol_ineq),
        "dpos": dpos_check(source, p, sp, tol.tol_pos),
    }


def scaled_boundedness(times, values, power: float, window: tuple[float, float]) -> tuple[float, float]:
    """(max, median) of values * (1 + t)^power over the window."""
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float) * (1.0 + t) ** power
    inside = (t >= window[0]) & (t <= window[1])
    if not np.any(inside):
        return math.nan, math.nan
    return float(np.max(y[inside])), float(np.median(y[inside]))
