"""General stoichiometry nA = mB: mass, signs of the (e, f, d) triple and decay of u^n - v^m."""

import numpy as np

from domain.grid import d1, integrate
from dynamics.imex import simulate_rdnm
from dynamics.kinetics import rdnm_equilibrium, simulate_kinetic_ode
from models.errors import ConfigurationError
from models.report import AcceptanceItem
from models.scenario import ScenarioConfig
from models.state import State
from pipeline.scenarios.base import Diagnosis, FitRequest, make_series, positive_times
from rules.acceptance import check_at_most, check_margin
from structures.checks import flux_ratio_sup, rdnm_signs_check
from structures.decay import sup_series

CLAIM = (
    "for nA = mB the total m u + n v is conserved, the entropy triple keeps e, d >= 0 with a finite "
    "flux ratio, and sup |u^n - v^m| decays (rates recorded for comparison with A = 2B)"
)

KINETIC_HORIZON = 50.0


def fit_requests(cfg: ScenarioConfig) -> list[FitRequest]:
    return [
        FitRequest("rho_nm_sup", -1.0, "rho_slope", informational=True),
        FitRequest("u_x_sup", -0.5, informational=True),
        FitRequest("v_x_sup", -0.5, informational=True),
    ]


def simulate(cfg: ScenarioConfig, context: dict) -> dict:
    p = cfg.params
    if p.n_st is None:
        raise ConfigurationError("rdnm_decay needs n_st and m_st")
    traj = simulate_rdnm(
        context["initial"], p, cfg.horizon, context["output_times"], dt=cfg.dt,
        tol_pos=cfg.tolerances.tol_pos, tol_bound=cfg.tolerances.tol_bound,
    )
    u0 = float(np.mean(context["initial"].u.values))
    v0 = float(np.mean(context["initial"].v.values))
    return {
        "trajectory": traj,
        "kinetic": simulate_kinetic_ode(u0, v0, p, KINETIC_HORIZON),
        "kinetic_target": rdnm_equilibrium(u0, v0, p),
    }


def diagnose(cfg: ScenarioConfig, context: dict, artifacts: dict) -> Diagnosis:
    traj = artifacts["trajectory"]
    p, tol = cfg.params, cfg.tolerances
    n, m = p.stoichiometry
    grid = traj.grid
    diagnosis = Diagnosis()

    quantities = {
        "rho_nm_sup": lambda s: s.u.values**n - s.v.values**m,
        "u_x_sup": lambda s: d1(s.u.values, grid),
        "v_x_sup": lambda s: d1(s.v.values, grid),
    }
    for name, quantity in quantities.items():
        diagnosis.series.append(make_series(name, *positive_times(*sup_series(traj, quantity))))

    totals = np.array([integrate(m * s.u.values + n * s.v.values, grid) for s in traj.snapshots])
    drift = np.abs(totals - totals[0]) / max(abs(totals[0]), 1e-300)

    # round-off below tol_pos is clipped before the structure is evaluated
    clipped = [
        State.from_arrays(grid, np.maximum(s.u.values, 0.0), np.maximum(s.v.values, 0.0), s.t)
        for s in traj.snapshots
    ]
    diagnosis.margins["rdnm_signs"] = rdnm_signs_check(clipped, p, tol.tol_pos)

    limit = artifacts["kinetic"].limit
    target = artifacts["kinetic_target"]
    diagnosis.measurements.update(
        {
            "n": n,
            "m": m,
            "mass_drift": float(np.max(drift)),
            "flux_ratio": flux_ratio_sup(clipped, p, "rdnm", tol.floor_den),
            "kinetic_limit_gap": max(abs(limit[0] - target[0]), abs(limit[1] - target[1])),
            "u_star": target[0],
            "v_star": target[1],
        }
    )
    return diagnosis


def assess(cfg: ScenarioConfig, diagnosis: Diagnosis) -> list[AcceptanceItem]:
    m = diagnosis.measurements
    tol = cfg.tolerances
    ratio = float(m["flux_ratio"])
    return [
        check_margin(diagnosis.margins["rdnm_signs"]),
        check_at_most(
            "mass_conservation", float(m["mass_drift"]), tol.mass, f"m u + n v with (n, m) = ({m['n']}, {m['m']})"
        ),
        AcceptanceItem(
            name="flux_ratio_finite",
            passed=bool(np.isfinite(ratio)),
            value=ratio,
            target="finite",
            tolerance=0.0,
            detail="sup f^2 / (e d)",
        ),
        check_at_most("kinetic_limit", float(m["kinetic_limit_gap"]), tol.tol_bound),
    ]
