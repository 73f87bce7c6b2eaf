"""Unequal diffusivities: uniformly local energy decays like t^(-1/2), |u - v^2| is O(t^(-1/2)),
and the localized energies obey both Gronwall-type inequalities."""

from dynamics.kinetics import ode_envelope_check
from models.errors import ConfigurationError
from models.report import AcceptanceItem
from models.scenario import ScenarioConfig
from pipeline.scenarios.base import Diagnosis, FitRequest, make_series, output_times
from pipeline.scenarios.common import (
    gradient_series,
    quasiconvergence_series,
    run_full,
    scaled_boundedness,
    structure_margins,
)
from rules.acceptance import check_at_most, check_envelope, check_gronwall, check_margin
from structures.balance import slaving_check
from structures.calibration import default_structure_params
from structures.decay import ul_decay_series
from structures.localized import gronwall_checks, localized_energies, measured_constants, random_pairs

CLAIM = (
    "for a != b, the uniformly local energy on windows of size sqrt(t) decays like t^(-1/2) "
    "and |u - v^2| (1 + t)^(1/2) stays bounded"
)

REQUIRED_GRONWALL_PAIRS = 10


def fit_requests(cfg: ScenarioConfig) -> list[FitRequest]:
    return [
        FitRequest("ul_energy", -0.5, "slope"),
        FitRequest("rho_sup", -0.5, "slope", informational=True),
        FitRequest("u_x_sup", -0.5, "slope", informational=True),
        FitRequest("v_x_sup", -0.5, "slope", informational=True),
    ]


def simulate(cfg: ScenarioConfig, context: dict) -> dict:
    if cfg.gronwall.pairs < REQUIRED_GRONWALL_PAIRS:
        raise ConfigurationError(
            f"unequal_diff_decay needs at least {REQUIRED_GRONWALL_PAIRS} Gronwall pairs, got {cfg.gronwall.pairs}"
        )
    times = output_times(cfg, cfg.gronwall.early_times())
    return {"trajectory": run_full(cfg, {**context, "output_times": times})}


def _gronwall(cfg: ScenarioConfig, traj, sp, diagnosis: Diagnosis) -> None:
    constants = measured_constants(traj, cfg.params, sp, cfg.tolerances.floor_den)
    opts = cfg.gronwall
    reports = []
    for x0, T in random_pairs(traj, opts.pairs, opts.t_min, opts.t_max, cfg.seed):
        series = localized_energies(traj, cfg.params, sp, T, x0)
        reports.append(gronwall_checks(series, constants, cfg.tolerances.tol_ineq))
    diagnosis.margins["gronwall"] = reports
    diagnosis.tables["gronwall"] = [
        {
            "T": r.T,
            "x0": r.x0,
            "energy_slack": r.energy_slack,
            "second_slack": r.second_slack,
            "initial_bound_slack": r.initial_bound_slack,
            "passed": float(r.passed),
        }
        for r in reports
    ]
    diagnosis.measurements.update({f"gronwall_{k}": v for k, v in constants.model_dump().items()})


def diagnose(cfg: ScenarioConfig, context: dict, artifacts: dict) -> Diagnosis:
    traj = artifacts["trajectory"]
    sp = default_structure_params(cfg.params)
    diagnosis = Diagnosis(series=gradient_series(traj))
    diagnosis.series.append(make_series("ul_energy", *ul_decay_series(traj)))
    diagnosis.series.append(quasiconvergence_series(traj, 0.5 * traj.grid.length))

    diagnosis.margins.update(structure_margins(traj, sp, cfg))
    diagnosis.margins["envelope"] = ode_envelope_check(traj, cfg.tolerances.tol_bound)
    _gronwall(cfg, traj, sp, diagnosis)

    window = cfg.fit_window.as_tuple() if cfg.fit_window else None
    slaving = slaving_check(traj, window)
    diagnosis.series.append(make_series("slaving_discrepancy", slaving.times, slaving.discrepancy))
    if slaving.discrepancy_fit is not None:
        diagnosis.measurements["slaving_discrepancy_slope"] = slaving.discrepancy_fit.slope

    rho = diagnosis.get_series("rho_sup")
    if cfg.boundedness_window is not None:
        window = cfg.boundedness_window.as_tuple()
    elif window is None:
        window = (rho.times[0], rho.times[-1])
    peak, median = scaled_boundedness(rho.times, rho.values, 0.5, window)
    diagnosis.measurements.update(
        {
            "rho_scaled_max": peak,
            "rho_scaled_median": median,
            "snapshots": len(traj.snapshots),
            "dt": traj.dt,
            "steps": sum(traj.substeps),
            "gamma": sp.gamma,
        }
    )
    return diagnosis


def assess(cfg: ScenarioConfig, diagnosis: Diagnosis) -> list[AcceptanceItem]:
    items = [check_margin(diagnosis.margins[name]) for name in ("primary_signs", "flux_bound", "ordering", "dpos")]
    items.append(check_envelope(diagnosis.margins["envelope"]))
    items.append(check_gronwall(diagnosis.margins["gronwall"], REQUIRED_GRONWALL_PAIRS))

    peak = float(diagnosis.measurements["rho_scaled_max"])
    median = float(diagnosis.measurements["rho_scaled_median"])
    ratio = cfg.tolerances.boundedness_ratio
    if "rho_sup" in diagnosis.zero_series:
        items.append(check_at_most("rho_scaled_bounded", 0.0, ratio, "series identically zero"))
    else:
        items.append(
            check_at_most(
                "rho_scaled_bounded",
                peak / median if median > 0 else float("inf"),
                ratio,
                f"max {peak:.4g} against median {median:.4g} of |rho| (1 + t)^(1/2)",
            )
        )
    return items
