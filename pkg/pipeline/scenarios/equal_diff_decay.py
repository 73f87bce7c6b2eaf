"""Equal diffusivities: gradients decay like t^(-1/2) and u - v^2 like t^(-1)."""

from dynamics.fields import w_residual
from dynamics.kinetics import ode_envelope_check
from models.report import AcceptanceItem
from models.scenario import ScenarioConfig
from pipeline.scenarios.base import Diagnosis, FitRequest, make_series
from pipeline.scenarios.common import gradient_series, quasiconvergence_series, run_full, structure_margins
from rules.acceptance import check_envelope, check_margin
from structures.calibration import default_structure_params
from structures.decay import ul_decay_series

CLAIM = (
    "for a = b, t|u_x|^2 + t|v_x|^2 + (1 + t)|u - v^2| stays bounded: "
    "sup-norm slopes -1/2, -1/2 and -1"
)


def fit_requests(cfg: ScenarioConfig) -> list[FitRequest]:
    return [
        FitRequest("u_x_sup", -0.5, "slope"),
        FitRequest("v_x_sup", -0.5, "slope"),
        FitRequest("rho_sup", -1.0, "rho_slope"),
        FitRequest("u_xx_sup", -1.0, "rho_slope", informational=True),
        FitRequest("ul_energy", -0.5, "slope", informational=True),
    ]


def simulate(cfg: ScenarioConfig, context: dict) -> dict:
    return {"trajectory": run_full(cfg, context)}


def diagnose(cfg: ScenarioConfig, context: dict, artifacts: dict) -> Diagnosis:
    traj = artifacts["trajectory"]
    sp = default_structure_params(cfg.params)
    diagnosis = Diagnosis(series=gradient_series(traj))
    diagnosis.series.append(make_series("ul_energy", *ul_decay_series(traj)))
    diagnosis.series.append(quasiconvergence_series(traj, 0.5 * traj.grid.length))

    diagnosis.margins.update(structure_margins(traj, sp, cfg))
    diagnosis.margins["envelope"] = ode_envelope_check(traj, cfg.tolerances.tol_bound)
    diagnosis.measurements.update(
        {
            "snapshots": len(traj.snapshots),
            "dt": traj.dt,
            "steps": sum(traj.substeps),
            "gamma": sp.gamma,
            "w_heat_residual": w_residual(traj).norm,
        }
    )
    return diagnosis


def assess(cfg: ScenarioConfig, diagnosis: Diagnosis) -> list[AcceptanceItem]:
    items = [check_margin(diagnosis.margins[name]) for name in ("primary_signs", "flux_bound", "ordering", "dpos")]
    items.append(check_envelope(diagnosis.margins["envelope"]))
    return items
