"""Calibration of the free constants gamma and theta of the second structures."""

import logging

import numpy as np

from models.errors import StructureParameterError
from models.state import Params
from models.structure import StructureParams
from structures.jets import random_jets
from structures.triples import check_alphabet, cross_coefficients, theta_lower_bounds

logger = logging.getLogger(__name__)

GAMMA_SAFETY = 0.9
THETA_LEVELS = 40


def _psd(a11: float, a12: float, a22: float) -> bool:
    return a11 >= 0.0 and a22 >= 0.0 and a11 * a22 - a12 * a12 >= 0.0


def _gamma_feasible(gamma: float, p: Params, alpha: float, beta: float) -> bool:
    c1, c2 = cross_coefficients(p, StructureParams(alpha=alpha, beta=beta))
    # (u_xx, rho) and (sqrt(v) v_xx, sqrt(v) rho)
    first = _psd(alpha * p.a - gamma, -0.5 * c1, p.k - gamma)
    second = _psd(beta * p.b - gamma, 0.5 * c2, 4.0 * p.k - 4.0 * gamma)
    return first and second


def gamma_max(p: Params, alpha: float, beta: float, iterations: int = 200) -> float:
    """Largest gamma keeping both Young quadratic forms of d~ - d~0 positive semidefinite."""
    check_alphabet(p, StructureParams(alpha=alpha, beta=beta))
    lo, hi = 0.0, min(alpha * p.a, beta * p.b, p.k)
    if _gamma_feasible(hi, p, alpha, beta):
        return hi
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if _gamma_feasible(mid, p, alpha, beta):
            lo = mid
        else:
            hi = mid
    return lo


def gamma_calibrate(p: Params, alpha: float, beta: float) -> float:
    g = gamma_max(p, alpha, beta)
    if g <= 0.0:
        raise StructureParameterError("gamma_max > 0", f"alpha={alpha}, beta={beta}")
    return GAMMA_SAFETY * g


def default_structure_params(p: Params, theta: float = 0.0, gamma: float | None = None) -> StructureParams:
    """alpha = (a + b)/k, beta = 2b/k; gamma defaults to 0.9 of the largest admissible value."""
    alpha, beta = (p.a + p.b) / p.k, 2.0 * p.b / p.k
    if gamma is None:
        gamma = gamma_calibrate(p, alpha, beta)
    return StructureParams(alpha=alpha, beta=beta, theta=theta, gamma=gamma)


def _min_ratios(p: Params, sp: StructureParams, jets, floor_den: float) -> dict[str, float]:
    ratios = {}
    for name, (value, reference) in theta_lower_bounds(jets, p, sp).items():
        keep = reference > floor_den
        ratios[name] = float(np.min(value[keep] / reference[keep]))
    return ratios


def theta_calibrate(
    p: Params,
    sp: StructureParams,
    probe_states: int = 4096,
    seed: int = 0,
    floor_den: float = 1e-14,
) -> tuple[StructureParams, float]:
    """Largest theta = 2^-j with all four lower-bound ratios positive on random jets, halved.

    Returns the calibrated parameters and c, the smallest ratio at that theta.
    """
    check_alphabet(p, sp)
    jets = random_jets(probe_states, seed)
    for j in range(THETA_LEVELS):
        trial = sp.model_copy(update={"theta": 2.0**-j})
        if min(_min_ratios(p, trial, jets, floor_den).values()) > 0.0:
            chosen = sp.model_copy(update={"theta": 2.0 ** -(j + 1)})
            c = min(_min_ratios(p, chosen, jets, floor_den).values())
            logger.debug("theta calibrated to %.3g (c=%.3g) on %d probes", chosen.theta, c, probe_states)
            return chosen, c
    raise StructureParameterError("theta lower bounds", f"no theta >= 2^-{THETA_LEVELS} found")


def dpos_gamma_report(p: Params, sp: StructureParams) -> dict[str, float]:
    """gamma in use against the largest feasible value."""
    return {"gamma": sp.gamma, "gamma_max": gamma_max(p, sp.alpha, sp.beta)}
