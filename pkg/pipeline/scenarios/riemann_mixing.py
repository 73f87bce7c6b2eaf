"""Riemann data mixing two equilibria, compared with the effective scalar diffusion for w = 2u + v."""

import logging

import numpy as np

from dynamics.effective import effective_discrepancy, mass, self_similar_collapse, simulate_effective_diffusion
from dynamics.imex import simulate_rd
from models.errors import ConfigurationError
from models.grid import Field
from models.report import AcceptanceItem
from models.scenario import ScenarioConfig
from pipeline.scenarios.base import Diagnosis, FitRequest, make_series, output_times
from rules.acceptance import check_at_most

logger = logging.getLogger(__name__)

CLAIM = (
    "Riemann data relax through a self-similar profile of the effective diffusion "
    "w_t = (D(w) w_x)_x, and the full system approaches that prediction (conjecture-consistent check)"
)

MONOTONE_SLACK = 1e-12


def fit_requests(cfg: ScenarioConfig) -> list[FitRequest]:
    return [FitRequest("v_discrepancy", -0.5, "slope", informational=True)]


def simulate(cfg: ScenarioConfig, context: dict) -> dict:
    t1 = cfg.mixing.collapse_t1
    if 4.0 * t1 > cfg.horizon * (1 + 1e-12):
        raise ConfigurationError(f"collapse needs 4*t1 = {4.0 * t1} within the horizon {cfg.horizon}")
    times = output_times(cfg, [t1, 4.0 * t1])
    tol = cfg.tolerances
    initial = context["initial"]
    full = simulate_rd(initial, cfg.params, cfg.horizon, times, dt=cfg.dt, tol_pos=tol.tol_pos, tol_bound=tol.tol_bound)
    w0 = Field(grid=initial.grid, values=2.0 * initial.u.values + initial.v.values)
    effective = simulate_effective_diffusion(
        w0, cfg.params, cfg.horizon, times, dt=cfg.mixing.effective_dt, tol_pos=tol.tol_pos
    )
    return {"trajectory": full, "effective": effective}


def equilibrium_v(w: np.ndarray) -> np.ndarray:
    """v on the equilibrium manifold carrying mass density w."""
    return 2.0 * w / (1.0 + np.sqrt(1.0 + 8.0 * np.maximum(w, 0.0)))


def _v_discrepancy(full, effective) -> tuple[list[float], list[float]]:
    eff_times = np.asarray(effective.times)
    eff = effective.matrix()
    times, gaps = [], []
    for s in full.snapshots:
        if s.t <= 0:
            continue
        j = int(np.argmin(np.abs(eff_times - s.t)))
        if abs(eff_times[j] - s.t) > 1e-9 * max(1.0, s.t):
            continue
        times.append(s.t)
        gaps.append(float(np.max(np.abs(s.v.values - equilibrium_v(eff[j])))))
    return times, gaps


def diagnose(cfg: ScenarioConfig, context: dict, artifacts: dict) -> Diagnosis:
    full, effective = artifacts["trajectory"], artifacts["effective"]
    grid = full.grid
    opts = cfg.mixing
    centre = 0.5 * grid.length
    diagnosis = Diagnosis()

    diagnosis.measurements["collapse_effective"] = self_similar_collapse(
        np.asarray(effective.times), effective.matrix(), grid, opts.collapse_t1, centre, opts.collapse_span
    )
    w_full = 2.0 * full.u_matrix() + full.v_matrix()
    diagnosis.measurements["collapse_full"] = self_similar_collapse(
        full.times, w_full, grid, opts.collapse_t1, centre, opts.collapse_span
    )

    times, gaps = _v_discrepancy(full, effective)
    diagnosis.series.append(make_series("v_discrepancy", times, gaps))
    w_times, w_gaps = effective_discrepancy(full, effective)
    keep = w_times > 0
    diagnosis.series.append(make_series("w_discrepancy", w_times[keep], w_gaps[keep]))

    masses = [mass(f.values, grid) for f in effective.fields]
    diagnosis.measurements["effective_mass_drift"] = abs(masses[-1] - masses[0]) / max(abs(masses[0]), 1e-300)

    tail_from = cfg.horizon / 10.0
    tail = [g for t, g in zip(times, gaps) if t >= tail_from]
    if len(tail) < opts.discrepancy_samples:
        raise ConfigurationError(
            f"{len(tail)} snapshots in the last decade [{tail_from:g}, {cfg.horizon:g}], need {opts.discrepancy_samples}"
        )
    increases = np.diff(tail)
    scale = max(tail)
    diagnosis.measurements["discrepancy_max_increase"] = float(np.max(increases)) / scale if scale > 0 else 0.0
    diagnosis.measurements["discrepancy_tail_samples"] = len(tail)
    logger.info(
        "mixing: collapse %.3e (effective), %.3e (full)",
        diagnosis.measurements["collapse_effective"], diagnosis.measurements["collapse_full"],
    )
    return diagnosis


def assess(cfg: ScenarioConfig, diagnosis: Diagnosis) -> list[AcceptanceItem]:
    m = diagnosis.measurements
    tol = cfg.tolerances
    return [
        check_at_most("self_similar_collapse", float(m["collapse_effective"]), tol.collapse),
        check_at_most("effective_mass_drift", float(m["effective_mass_drift"]), tol.mass),
        check_at_most(
            "discrepancy_monotone",
            float(m["discrepancy_max_increase"]),
            MONOTONE_SLACK,
            f"largest relative increase of sup|v - V(w)| over the last decade ({m['discrepancy_tail_samples']} samples)",
        ),
    ]
