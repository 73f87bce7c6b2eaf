"""Structure-level checks: kinetics, pointwise inequalities, calibrated constants,
balance-law convergence orders, the linearized difference system and the comparison principle."""

import logging

import numpy as np

from domain.grid import make_grid
from domain.weights import weight_chi
from dynamics.imex import apriori_bounds, dt_max, simulate_rd
from dynamics.kinetics import comparison_check, equilibrium_from_data, ode_envelope_check, simulate_kinetic_ode
from dynamics.linearized import simulate_linearized, weighted_l1_growth
from models.grid import Field
from models.report import AcceptanceItem
from models.scenario import ScenarioConfig
from models.state import State, Trajectory
from pipeline.profiles import band_limited, profile
from pipeline.scenarios.base import Diagnosis, FitRequest
from pipeline.scenarios.common import run_full, structure_margins
from rules.acceptance import check_at_least, check_at_most, check_close, check_envelope, check_margin
from structures.balance import balance_residual, instantaneous_balance_residual, refinement_order, rho_residual
from structures.calibration import default_structure_params, dpos_gamma_report, theta_calibrate
from structures.checks import flux_constant, flux_ratio_sup
from structures.jets import jet_from_state
from structures.triples import theta_lower_bounds

logger = logging.getLogger(__name__)

CLAIM = (
    "the primary and second dissipative structures satisfy their balance laws, flux bounds and "
    "orderings; the kinetics conserve 2u + v and the difference system is linear and order preserving"
)

BALANCE_KINDS = ("primary", "secondary", "theta_first", "theta_second")
PROBE_PROFILES = 8
PROBE_AMPLITUDE = 0.95
KINETIC_HORIZON = 30.0
ODE_SAMPLE_RANGE = 10.0
ODE_TOLERANCE = 1e-12
SUPERPOSITION_TOLERANCE = 1e-10
COMPARISON_LIFT = 0.1


def fit_requests(cfg: ScenarioConfig) -> list[FitRequest]:
    return []


def probe_states(cfg: ScenarioConfig, grid) -> list[State]:
    states = []
    for i in range(PROBE_PROFILES):
        spec = cfg.initial.model_copy(
            update={"name": "random_smooth", "options": {"amplitude": PROBE_AMPLITUDE, "seed": float(cfg.seed + i)}}
        )
        states.append(profile(spec, grid, cfg.seed + i))
    return states


def _temporal_runs(cfg: ScenarioConfig, initial: State) -> list[Trajectory]:
    opts = cfg.refinement
    runs = []
    for h in (opts.dt, 0.5 * opts.dt):
        steps = int(round(opts.horizon / h))
        times = h * np.arange(1, steps + 1)
        runs.append(simulate_rd(initial, cfg.params, steps * h, times, dt=h, tol_pos=cfg.tolerances.tol_pos))
    return runs


def _spatial_states(cfg: ScenarioConfig) -> list[State]:
    n = cfg.refinement.spatial_points
    return [
        profile(cfg.initial, make_grid(cfg.grid.length, points, cfg.grid.bc), cfg.seed)
        for points in (n, 2 * n, 4 * n)
    ]


def _linearized(cfg: ScenarioConfig, reference: Trajectory) -> dict:
    """Growth of the weighted L1 size, superposition, order preservation and the v = 0 decay."""
    grid, p = reference.grid, cfg.params
    T = float(reference.times[-1])
    rng = np.random.default_rng(cfg.seed)
    chi = weight_chi(grid, 1.0 / np.sqrt(flux_constant(p) * T), 0.5 * grid.length)

    def field(values):
        return Field(grid=grid, values=values)

    pairs = [(band_limited(grid, rng, 4), band_limited(grid, rng, 4)) for _ in range(cfg.refinement.linearized_pairs)]
    growth = []
    finals = []
    for U0, V0 in pairs:
        run = simulate_linearized(reference, field(U0), field(V0), 0.0, T)
        growth.append(weighted_l1_growth(run, chi))
        finals.append(run.snapshots[-1])

    (U1, V1), (U2, V2) = pairs[0], pairs[-1]
    combined = simulate_linearized(reference, field(U1 + 2.0 * U2), field(V1 + 2.0 * V2), 0.0, T).snapshots[-1]
    first, last = finals[0], finals[-1]
    gap = max(
        float(np.max(np.abs(combined.u.values - first.u.values - 2.0 * last.u.values))),
        float(np.max(np.abs(combined.v.values - first.v.values - 2.0 * last.v.values))),
    )
    scale = max(combined.u.max_abs(), combined.v.max_abs(), 1e-300)

    positive = simulate_linearized(reference, field(np.abs(U1)), field(np.abs(V1)), 0.0, T).snapshots[-1]

    resting = State.from_arrays(grid, np.zeros(grid.points), np.zeros(grid.points))
    zero_path = Trajectory(
        snapshots=(resting, resting.model_copy(update={"t": T})), params=p, dt=T, substeps=(1,)
    )
    decayed = simulate_linearized(zero_path, field(np.abs(U1)), field(V1), 0.0, T).snapshots[-1]
    allowed = np.exp(-p.k * T) * float(np.max(np.abs(U1)))

    return {
        "linearized_l1_growth_max": float(max(growth)),
        "linearized_superposition": gap / scale,
        "linearized_min_from_nonnegative": positive.min_value(),
        "linearized_v0_decay_excess": (decayed.u.max_abs() - allowed) / max(allowed, 1e-300),
    }


def _ode_layer(cfg: ScenarioConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    data = rng.uniform(0.0, ODE_SAMPLE_RANGE, size=(cfg.refinement.ode_samples, 2))
    manifold_gap, mass_gap = 0.0, 0.0
    for u0, v0 in data:
        u_star, v_star = equilibrium_from_data(float(u0), float(v0))
        mass = 2.0 * u0 + v0
        manifold_gap = max(manifold_gap, abs(u_star - v_star**2) / max(u_star, 1.0))
        mass_gap = max(mass_gap, abs(2.0 * u_star + v_star - mass) / max(mass, 1e-300))
    path = simulate_kinetic_ode(1.0, 0.0, cfg.params, KINETIC_HORIZON)
    target = equilibrium_from_data(1.0, 0.0)
    limit = path.limit
    return {
        "ode_manifold_gap": manifold_gap,
        "ode_mass_gap": mass_gap,
        "kinetic_limit_gap": max(abs(limit[0] - target[0]), abs(limit[1] - target[1])),
        "kinetic_conserved_drift": float(np.max(np.abs(2.0 * path.u_bar + path.v_bar - path.conserved))),
    }


def simulate(cfg: ScenarioConfig, context: dict) -> dict:
    initial = context["initial"]
    reference = run_full(cfg, context)

    lift = COMPARISON_LIFT * (1.0 + band_limited(initial.grid, np.random.default_rng(cfg.seed), 4))
    upper = State(u=initial.u.like(initial.u.values + lift), v=initial.v.like(initial.v.values + lift))
    cap = dt_max(cfg.params, *apriori_bounds(upper.u.values, upper.v.values, cfg.params))
    if cfg.dt is not None:
        cap = min(cap, cfg.dt)
    times = context["output_times"]
    ordered = [simulate_rd(s, cfg.params, cfg.horizon, times, dt=cap) for s in (initial, upper)]

    return {
        "trajectory": reference,
        "ordered": ordered,
        "temporal": _temporal_runs(cfg, initial),
        "spatial": _spatial_states(cfg),
        "probes": probe_states(cfg, initial.grid),
        "linearized": _linearized(cfg, reference),
        "ode": _ode_layer(cfg),
    }


def _theta_margins(states: list[State], cfg: ScenarioConfig, sp) -> tuple[float, float]:
    """(smallest relative lower-bound value, smallest value/reference ratio) over the states."""
    worst_value, worst_ratio = np.inf, np.inf
    for s in states:
        for value, reference in theta_lower_bounds(jet_from_state(s), cfg.params, sp).values():
            worst_value = min(worst_value, float(value.min()) / (1.0 + float(np.max(np.abs(value)))))
            keep = reference > cfg.tolerances.floor_den
            if np.any(keep):
                worst_ratio = min(worst_ratio, float(np.min(value[keep] / reference[keep])))
    return worst_value, worst_ratio


def diagnose(cfg: ScenarioConfig, context: dict, artifacts: dict) -> Diagnosis:
    p, tol = cfg.params, cfg.tolerances
    reference = artifacts["trajectory"]
    states = list(reference.snapshots) + artifacts["probes"]
    sp = default_structure_params(p)
    sp_theta, c = theta_calibrate(p, sp, cfg.refinement.probe_states, cfg.seed, tol.floor_den)

    diagnosis = Diagnosis()
    diagnosis.margins.update(structure_margins(states, sp, cfg))
    diagnosis.margins.update(
        {
            "comparison": comparison_check(*artifacts["ordered"], tol.tol_bound),
            "envelope": ode_envelope_check(reference, tol.tol_bound),
        }
    )
    theta_value, theta_ratio = _theta_margins(states, cfg, sp_theta)
    m = diagnosis.measurements
    m.update(dpos_gamma_report(p, sp))
    m.update(
        {
            "theta": sp_theta.theta,
            "theta_c": c,
            "theta_lower_bound_margin": theta_value,
            "theta_lower_bound_ratio": theta_ratio,
            "boltzmann_flux_ratio": flux_ratio_sup(states, p, "boltzmann", tol.floor_den),
            "rdnm_flux_ratio": flux_ratio_sup(states, p, "rdnm", tol.floor_den),
        }
    )
    m.update(artifacts["linearized"])
    m.update(artifacts["ode"])

    coarse, fine = artifacts["temporal"]
    coarse_state, fine_state, finest_state = artifacts["spatial"]
    rows = []
    for kind in BALANCE_KINDS:
        params = sp_theta if kind.startswith("theta") else sp
        r_dt = balance_residual(coarse, kind, params, rate="chain").norm
        r_dt2 = balance_residual(fine, kind, params, rate="chain").norm
        r_dx = instantaneous_balance_residual(coarse_state, p, kind, params)
        r_dx2 = instantaneous_balance_residual(fine_state, p, kind, params)
        r_dx4 = instantaneous_balance_residual(finest_state, p, kind, params)
        rows.append(
            {
                "residual_dt": r_dt,
                "residual_dt_half": r_dt2,
                "time_order": refinement_order(r_dt, r_dt2),
                "residual_dx": r_dx,
                "residual_dx_half": r_dx2,
                "space_order": refinement_order(r_dx, r_dx2),
                "residual_dx_quarter": r_dx4,
                "space_order_fine": refinement_order(r_dx2, r_dx4),
            }
        )
    diagnosis.tables["balance_refinement"] = rows
    m["rho_identity_residual"] = rho_residual(fine).norm
    logger.info("structure sweep: theta=%.3g, c=%.3g, gamma=%.3g", sp_theta.theta, c, sp.gamma)
    return diagnosis


def assess(cfg: ScenarioConfig, diagnosis: Diagnosis) -> list[AcceptanceItem]:
    tol = cfg.tolerances
    m = diagnosis.measurements
    items = [
        check_margin(diagnosis.margins[name])
        for name in ("primary_signs", "flux_bound", "ordering", "dpos", "comparison")
    ]
    items.append(check_envelope(diagnosis.margins["envelope"]))
    for kind, row in zip(BALANCE_KINDS, diagnosis.tables["balance_refinement"]):
        items.append(check_close(f"balance_{kind}_time_order", row["time_order"], 1.0, tol.order))
        items.append(check_close(f"balance_{kind}_space_order", row["space_order"], 2.0, tol.order))
        items.append(check_close(f"balance_{kind}_space_order_fine", row["space_order_fine"], 2.0, tol.order))
    items += [
        check_at_least("theta_lower_bounds", float(m["theta_lower_bound_margin"]), -tol.tol_ineq,
                       f"theta={m['theta']:.4g}, calibrated c={m['theta_c']:.4g}"),
        check_at_most("ode_equilibrium_manifold", float(m["ode_manifold_gap"]), ODE_TOLERANCE),
        check_at_most("ode_mass_conservation", float(m["ode_mass_gap"]), ODE_TOLERANCE),
        check_at_most("kinetic_limit", float(m["kinetic_limit_gap"]), tol.tol_bound),
        check_at_most("linearized_superposition", float(m["linearized_superposition"]), SUPERPOSITION_TOLERANCE),
        check_at_least("linearized_order_preserving", float(m["linearized_min_from_nonnegative"]), -tol.tol_pos),
        check_at_most("linearized_decay_without_v", float(m["linearized_v0_decay_excess"]), tol.tol_bound),
    ]
    return items
