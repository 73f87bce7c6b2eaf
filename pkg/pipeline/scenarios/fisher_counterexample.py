"""Fisher-KPP states embedded in the a = b = k = 1 system: without positivity, u - v^2 need not decay."""

import numpy as np

from domain.grid import make_grid
from dynamics.fisher import fisher_kpp_state, simulate_fisher_embedded, z_of
from dynamics.imex import simulate_rd, stationarity_residual
from models.errors import ConfigurationError
from models.report import AcceptanceItem
from models.scenario import ScenarioConfig
from pipeline.scenarios.base import Diagnosis, FitRequest, make_series
from rules.acceptance import check_at_least, check_at_most, check_close
from structures.balance import refinement_order
from structures.decay import sup_series

CLAIM = (
    "embedded Fisher-KPP solutions leave the positive cone and keep sup|u - v^2| "
    "bounded away from zero: the decay of u - v^2 needs nonnegative data"
)

PULSE_ORDER = 2.0
NON_DECAY = "non-decay confirmed"


def fit_requests(cfg: ScenarioConfig) -> list[FitRequest]:
    return []


def _require_unit_coefficients(cfg: ScenarioConfig) -> None:
    p = cfg.params
    if (p.a, p.b, p.k) != (1.0, 1.0, 1.0) or p.n_st is not None:
        raise ConfigurationError("the Fisher-KPP embedding needs a = b = k = 1 and the A = 2B reaction")


def simulate(cfg: ScenarioConfig, context: dict) -> dict:
    _require_unit_coefficients(cfg)
    opts = cfg.fisher
    residuals = []
    for points in (opts.pulse_points, 2 * opts.pulse_points):
        grid = make_grid(opts.pulse_length, points, "periodic")
        residuals.append((points, stationarity_residual(fisher_kpp_state("pulse", grid), cfg.params)))
    wave = simulate_fisher_embedded(context["initial"], cfg.params, cfg.horizon, context["output_times"], dt=cfg.dt)
    times = np.asarray(context["output_times"], dtype=float)
    early = times[times <= opts.embedding_horizon + 1e-12]
    if early.size == 0:
        early = times[:1]
    direct = simulate_rd(
        context["initial"], cfg.params, float(early[-1]), early, dt=cfg.dt, enforce_positivity=False
    )
    return {"pulse_residuals": residuals, "trajectory": wave, "direct": direct}


def embedding_deviation(direct, wave) -> float:
    """Largest gap between the direct (u, v) run and the z-variable run at the direct run's snapshots."""
    gaps = []
    for s in direct.snapshots[1:]:
        w = wave.at(s.t)
        gaps.append(max(np.max(np.abs(s.u.values - w.u.values)), np.max(np.abs(s.v.values - w.v.values))))
    return float(max(gaps))


def front_position(s) -> float:
    """First crossing of z = 1/2 from the left, linearly interpolated."""
    z = z_of(s)
    below = np.nonzero(z < 0.5)[0]
    if below.size == 0 or below[0] == 0:
        return float("nan")
    i = int(below[0])
    x = s.grid.x
    return float(x[i - 1] + (z[i - 1] - 0.5) / (z[i - 1] - z[i]) * (x[i] - x[i - 1]))


def diagnose(cfg: ScenarioConfig, context: dict, artifacts: dict) -> Diagnosis:
    traj = artifacts["trajectory"]
    (n1, r1), (n2, r2) = artifacts["pulse_residuals"]
    diagnosis = Diagnosis()
    diagnosis.tables["pulse_refinement"] = [
        {"points": float(n1), "residual": r1},
        {"points": float(n2), "residual": r2},
    ]
    diagnosis.measurements["pulse_order"] = refinement_order(r1, r2)
    diagnosis.measurements["embedding_deviation"] = embedding_deviation(artifacts["direct"], traj)
    diagnosis.measurements["embedding_horizon"] = float(artifacts["direct"].times[-1])

    times, rho = sup_series(traj, lambda s: s.u.values - s.v.values**2)
    diagnosis.series.append(make_series("rho_sup", times, rho))
    diagnosis.measurements["rho_sup_min"] = float(np.min(rho))
    diagnosis.measurements["v_min"] = float(np.min(traj.v_matrix()))
    bounded_away = diagnosis.measurements["rho_sup_min"] >= cfg.tolerances.fisher_rho_floor
    diagnosis.measurements["verdict"] = NON_DECAY if bounded_away else "decay not excluded"

    fronts = np.array([front_position(s) for s in traj.snapshots])
    ok = np.isfinite(fronts)
    diagnosis.series.append(make_series("front_position", traj.times[ok], fronts[ok]))
    if np.count_nonzero(ok) >= 2:
        speed = np.polyfit(traj.times[ok], fronts[ok], 1)[0]
        diagnosis.measurements["front_speed"] = float(speed)
    return diagnosis


def assess(cfg: ScenarioConfig, diagnosis: Diagnosis) -> list[AcceptanceItem]:
    m = diagnosis.measurements
    tol = cfg.tolerances
    floor = check_at_least(
        "rho_bounded_below",
        float(m["rho_sup_min"]),
        tol.fisher_rho_floor,
        f"min over t in [0, {cfg.horizon:g}] of sup_x |u - v^2|",
    )
    return [
        check_close("pulse_residual_order", float(m["pulse_order"]), PULSE_ORDER, tol.order),
        check_at_most(
            "embedding_consistency",
            float(m["embedding_deviation"]),
            tol.fisher_embedding,
            f"direct (u, v) run vs z-variable run on [0, {m['embedding_horizon']:g}]",
        ),
        floor,
    ]
