"""Linearized kernel at (v_bar^2, v_bar): closed-form exponential, projections and their L1 decay."""

import logging
import time

import numpy as np
from scipy.linalg import expm

from models.kernel import KernelParams
from models.report import AcceptanceItem
from models.scenario import ScenarioConfig
from pipeline.scenarios.base import Diagnosis, FitRequest, make_series
from rules.acceptance import check_at_most, check_slope
from spectral.kernel import interpolation_ratio, kernel_l1_decay
from spectral.symbol import delta, eigenvalues, expA_closed, matrix_A, symbol_actions

logger = logging.getLogger(__name__)

CLAIM = (
    "the projections S M, N^T S and N^T S M of the linearized kernel decay in L1 like "
    "t^(-1), t^(-1), t^(-2) and d/dx S like t^(-1/2); for a = b the projections decay faster than any power"
)

# (label, projection, derivative order, expected slope, tolerance name)
DECAY_TABLE = (
    ("kernel_dx_full", "full", 1, -0.5, "slope"),
    ("kernel_M_right", "M_right", 0, -1.0, "rho_slope"),
    ("kernel_N_left", "N_left", 0, -1.0, "rho_slope"),
    ("kernel_N_M", "N_M", 0, -2.0, "second_order_slope"),
)
PROJECTIONS_EQUAL = ("M_right", "N_left", "N_M")
SWEEP_POINTS = 4001
INTERPOLATION_TIMES = (1.0, 10.0, 100.0)


def fit_requests(cfg: ScenarioConfig) -> list[FitRequest]:
    return []


def kernel_params(cfg: ScenarioConfig, equal: bool = False) -> KernelParams:
    p = cfg.params
    b = p.a if equal else p.b
    return KernelParams(a=p.a, b=b, k=p.k, v_bar=cfg.kernel.v_bar)


def oracle_error(kp: KernelParams, samples: int, xi_max: float, t_max: float, seed: int) -> float:
    """Largest relative Frobenius error of the closed form against scaling-and-squaring expm."""
    rng = np.random.default_rng(seed)
    xis = rng.uniform(-xi_max, xi_max, samples)
    ts = rng.uniform(0.0, t_max, samples)
    ts[ts == 0.0] = t_max
    A = matrix_A(xis, kp)
    worst = 0.0
    for xi, t, a in zip(xis, ts, A):
        reference = expm(t * a)
        closed = expA_closed(np.array([xi]), float(t), kp)[0]
        worst = max(worst, float(np.linalg.norm(closed - reference) / np.linalg.norm(reference)))
    return worst


def collinearity(kp: KernelParams, xi_max: float, times) -> float:
    """max |S M x M| / (|S M| |M|) over a xi sweep; zero when S M is parallel to M."""
    xi = np.linspace(-xi_max, xi_max, SWEEP_POINTS)
    M = kp.M
    worst = 0.0
    for t in times:
        SM = symbol_actions(xi, float(t), kp).SM
        cross = np.abs(SM[:, 0] * M[1] - SM[:, 1] * M[0])
        size = np.linalg.norm(SM, axis=1) * np.linalg.norm(M)
        keep = size > 0
        if np.any(keep):
            worst = max(worst, float(np.max(cross[keep] / size[keep])))
    return worst


def simulate(cfg: ScenarioConfig, context: dict) -> dict:
    opts = cfg.kernel
    kp = kernel_params(cfg)
    kp_equal = kernel_params(cfg, equal=True)
    times = np.geomspace(opts.t_lo, opts.t_hi, opts.count)
    decays = {
        label: kernel_l1_decay(kp, m, times, projection, faster_than_power_slope=opts.faster_than_power_slope)
        for label, projection, m, _, _ in DECAY_TABLE
    }
    equal_decays = {
        projection: kernel_l1_decay(kp_equal, 0, times, projection, faster_than_power_slope=opts.faster_than_power_slope)
        for projection in PROJECTIONS_EQUAL
    }
    started = time.perf_counter()
    worst = oracle_error(kp, opts.oracle_samples, opts.xi_max, opts.t_max, cfg.seed)
    oracle_seconds = time.perf_counter() - started
    logger.debug("oracle comparison: %d samples in %.2fs", opts.oracle_samples, oracle_seconds)
    return {
        "kernel_params": kp,
        "decays": decays,
        "equal_decays": equal_decays,
        "oracle_error": worst,
        "oracle_seconds": oracle_seconds,
        "collinearity": collinearity(kp_equal, opts.xi_max, np.geomspace(0.01, opts.t_max, 8)),
    }


def diagnose(cfg: ScenarioConfig, context: dict, artifacts: dict) -> Diagnosis:
    kp = artifacts["kernel_params"]
    diagnosis = Diagnosis()
    for label, decay in artifacts["decays"].items():
        diagnosis.series.append(make_series(label, decay.times, decay.l1_norms, decay.envelope))
        if decay.fit is not None:
            diagnosis.fits[label] = decay.fit
        diagnosis.measurements[f"{label}_envelope_constant"] = decay.envelope_constant

    diagnosis.tables["equal_diffusivity"] = [
        {
            "slope": decay.fit.slope if decay.fit is not None else float("-inf"),
            "faster_than_power": float(decay.faster_than_power),
            "last_positive_norm": max((n for n in decay.l1_norms if n > 0), default=0.0),
        }
        for decay in artifacts["equal_decays"].values()
    ]

    xi = np.linspace(-cfg.kernel.xi_max, cfg.kernel.xi_max, SWEEP_POINTS)
    lam_plus, lam_minus = eigenvalues(xi, kp)
    g = kp.kappa + kp.mu * xi**2
    diagnosis.measurements.update(
        {
            "oracle_max_rel_error": artifacts["oracle_error"],
            "oracle_seconds": artifacts["oracle_seconds"],
            "collinearity_nu0": artifacts["collinearity"],
            "max_lambda_plus": float(np.max(lam_plus)),
            "max_lambda_minus": float(np.max(lam_minus)),
            "delta_sandwich_margin": float(np.min(g - delta(xi, kp))),
        }
    )
    diagnosis.tables["interpolation_ratio"] = [
        {"t": t, "ratio": interpolation_ratio(t, kp, "full", 0)} for t in INTERPOLATION_TIMES
    ]
    return diagnosis


def assess(cfg: ScenarioConfig, diagnosis: Diagnosis) -> list[AcceptanceItem]:
    tol = cfg.tolerances
    items = [
        check_slope(label, diagnosis.fits.get(label), target, getattr(tol, tolerance))
        for label, _, _, target, tolerance in DECAY_TABLE
    ]
    m = diagnosis.measurements
    items.append(check_at_most("oracle_equivalence", float(m["oracle_max_rel_error"]), tol.oracle_rel))
    if cfg.kernel.oracle_budget_s is not None:
        items.append(check_at_most("oracle_runtime", float(m["oracle_seconds"]), cfg.kernel.oracle_budget_s))
    items.append(check_at_most("collinear_when_nu_zero", float(m["collinearity_nu0"]), tol.collinear))
    items.append(check_at_most("lambda_plus_nonpositive", float(m["max_lambda_plus"]), 0.0))
    for projection, row in zip(PROJECTIONS_EQUAL, diagnosis.tables["equal_diffusivity"]):
        items.append(
            AcceptanceItem(
                name=f"equal_{projection}_faster_than_power",
                passed=bool(row["faster_than_power"]),
                value=row["slope"],
                target=f"< {cfg.kernel.faster_than_power_slope:g}",
                tolerance=abs(cfg.kernel.faster_than_power_slope),
                detail="a = b: the projection carries only the exp(-2 kappa t) mode",
            )
        )
    return items
