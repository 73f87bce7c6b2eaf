"""Bounded interval with no-flux ends: exponential convergence to the equilibrium fixed by the mass."""

import numpy as np

from domain.grid import integrate
from dynamics.kinetics import equilibrium_from_data
from models.errors import ConfigurationError, FitError
from models.report import AcceptanceItem
from models.scenario import ScenarioConfig
from pipeline.scenarios.base import Diagnosis, FitRequest, make_series
from pipeline.scenarios.common import run_full
from rules.acceptance import check_at_least, check_at_most
from structures.decay import log_linear_fit

CLAIM = (
    "on a bounded interval with Neumann conditions the solution converges exponentially "
    "to the unique equilibrium with 2u + v = M/L"
)

TAIL_FLOOR = 1e-13


def fit_requests(cfg: ScenarioConfig) -> list[FitRequest]:
    return []


def simulate(cfg: ScenarioConfig, context: dict) -> dict:
    if context["grid"].bc != "neumann":
        raise ConfigurationError("neumann_interval needs a grid with bc = 'neumann'")
    return {"trajectory": run_full(cfg, context)}


def diagnose(cfg: ScenarioConfig, context: dict, artifacts: dict) -> Diagnosis:
    traj = artifacts["trajectory"]
    grid = traj.grid
    masses = np.array([integrate(2.0 * s.u.values + s.v.values, grid) for s in traj.snapshots])
    M = float(masses[0])
    u_inf, v_inf = equilibrium_from_data(0.0, M / grid.length)
    distances = np.array(
        [float(np.max(np.abs(s.u.values - u_inf)) + np.max(np.abs(s.v.values - v_inf))) for s in traj.snapshots]
    )

    diagnosis = Diagnosis()
    times = traj.times
    drift = np.abs(masses - M) / max(abs(M), 1e-300)
    diagnosis.series.append(make_series("mass_drift", times, drift))
    diagnosis.series.append(make_series("equilibrium_distance", times, distances))

    tail = (times >= 0.5 * cfg.horizon) & (distances > TAIL_FLOOR)
    m = diagnosis.measurements
    m.update(
        {
            "mass": M,
            "mass_drift": float(np.max(drift)),
            "u_inf": u_inf,
            "v_inf": v_inf,
            "equilibrium_mass_gap": abs(2.0 * u_inf + v_inf - M / grid.length),
            "final_distance": float(distances[-1]),
            "tail_samples": int(np.count_nonzero(tail)),
        }
    )
    try:
        rate, r_squared = log_linear_fit(times[tail], distances[tail])
        m["convergence_rate"] = rate
        m["tail_r_squared"] = r_squared
        diagnosis.series[-1] = make_series(
            "equilibrium_distance",
            times,
            distances,
            envelope=distances[tail][0] * np.exp(-rate * (times - times[tail][0])),
        )
    except FitError:
        m["convergence_rate"] = float("nan")
        m["tail_r_squared"] = float("nan")
    return diagnosis


def assess(cfg: ScenarioConfig, diagnosis: Diagnosis) -> list[AcceptanceItem]:
    m = diagnosis.measurements
    tol = cfg.tolerances
    return [
        check_at_most("mass_conservation", float(m["mass_drift"]), tol.mass),
        check_at_most(
            "terminal_distance",
            float(m["final_distance"]),
            tol.equilibrium,
            f"limit (u, v) = ({m['u_inf']:.12g}, {m['v_inf']:.12g})",
        ),
        check_at_least(
            "tail_log_linear_r2",
            float(m["tail_r_squared"]),
            tol.r_squared_min,
            f"rate {m['convergence_rate']:.4g} on {m['tail_samples']} samples",
        ),
    ]
