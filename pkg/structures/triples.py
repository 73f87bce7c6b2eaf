"""Dissipative structures (e, f, d) with the local balance e_t = f_x - d.

The primary and second structures, their theta modifications through
w = 2u + v, the Boltzmann entropy structure and the structure of the
generalized reaction nA = mB. Time derivatives inside the fluxes come from
the right-hand sides, never from differencing in time.
"""

import logging

import numpy as np

from domain.grid import d1
from models.errors import ConfigurationError, DomainError, StructureParameterError
from models.grid import Field
from models.state import Params, State
from models.structure import EDSField, EDSKind, StructureParams
from structures.jets import Jet, jet_from_state

logger = logging.getLogger(__name__)

CONCENTRATION_FLOOR = 1e-12


def cross_coefficients(p: Params, sp: StructureParams) -> tuple[float, float]:
    """Coefficients of rho u_xx and rho v v_xx in the second dissipation."""
    c1 = p.a + sp.alpha * p.k - 0.5 * sp.beta * p.k
    c2 = 2.0 * p.b + sp.beta * p.k
    return c1, c2


def check_alphabet(p: Params, sp: StructureParams) -> None:
    """The two Young conditions making the second dissipation positive."""
    c1, c2 = cross_coefficients(p, sp)
    if not c1**2 < 4.0 * p.a * sp.alpha * p.k:
        raise StructureParameterError(
            "(a + alpha k - beta k/2)^2 < 4 a alpha k", f"lhs={c1**2:.6g}, rhs={4.0 * p.a * sp.alpha * p.k:.6g}"
        )
    if not c2**2 < 16.0 * p.b * sp.beta * p.k:
        raise StructureParameterError(
            "(2b + beta k)^2 < 16 b beta k", f"lhs={c2**2:.6g}, rhs={16.0 * p.b * sp.beta * p.k:.6g}"
        )


def _require_a2b(p: Params) -> None:
    if p.stoichiometry != (1, 2):
        raise ConfigurationError("this structure is defined for A = 2B")


# pointwise kernels on jets, shared by the field constructors and calibration


def primary_terms(j: Jet, p: Params) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    e = 0.5 * j.u**2 + j.v**3 / 6.0
    f = p.a * j.u * j.ux + 0.5 * p.b * j.v**2 * j.vx
    d = p.a * j.ux**2 + p.b * j.v * j.vx**2 + p.k * j.rho**2
    return e, f, d


def secondary_terms(j: Jet, p: Params, sp: StructureParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    alpha, beta, k = sp.alpha, sp.beta, p.k
    rho, rho_x = j.rho, j.rho_x
    c1, c2 = cross_coefficients(p, sp)
    e = 0.5 * alpha * j.ux**2 + 0.5 * beta * j.v * j.vx**2 + 0.5 * rho**2
    f = (
        alpha * j.ux * j.ut(p)
        + beta * j.v * j.vx * j.vt(p)
        - beta * p.b / 6.0 * j.vx**3
        + 0.5 * beta * k * rho * rho_x
    )
    d = (
        alpha * p.a * j.uxx**2
        + beta * p.b * j.v * j.vxx**2
        + k * (1.0 + 4.0 * j.v) * rho**2
        + 0.5 * beta * k * rho_x**2
        - c1 * rho * j.uxx
        + c2 * rho * j.v * j.vxx
    )
    return e, f, d


def secondary_flux_part(j: Jet, p: Params, sp: StructureParams) -> np.ndarray:
    """The flux without its v_x^3 term, the part obeying a pointwise bound by e~ d~0."""
    _, f, _ = secondary_terms(j, p, sp)
    return f + sp.beta * p.b / 6.0 * j.vx**3


def dtilde0(j: Jet, p: Params, sp: StructureParams) -> np.ndarray:
    """gamma (u_xx^2 + v v_xx^2 + (1 + 4v) rho^2) + (beta k/2) rho_x^2."""
    bulk = j.uxx**2 + j.v * j.vxx**2 + (1.0 + 4.0 * j.v) * j.rho**2
    return sp.gamma * bulk + 0.5 * sp.beta * p.k * j.rho_x**2


def theta_first_terms(j: Jet, p: Params, sp: StructureParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    e, f, d = primary_terms(j, p)
    th, w, wx = sp.theta, j.w, j.wx
    shift = 2.0 * th * (p.a - p.b)
    return (
        e + 0.5 * th * w**2,
        f + th * p.b * w * wx + shift * w * j.ux,
        d + th * p.b * wx**2 + shift * wx * j.ux,
    )


def theta_second_terms(j: Jet, p: Params, sp: StructureParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    e, f, d = secondary_terms(j, p, sp)
    th, wx, wxx = sp.theta, j.wx, j.wxx
    return (
        e + 0.5 * th * wx**2,
        f + th * wx * j.wt(p),
        d + th * p.b * wxx**2 + 2.0 * th * (p.a - p.b) * wxx * j.uxx,
    )


def theta_lower_bounds(j: Jet, p: Params, sp: StructureParams) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """(value, reference) pairs for the four lower bounds value >= c * reference."""
    e1, _, d1_ = theta_first_terms(j, p, sp)
    et1, _, dt1 = theta_second_terms(j, p, sp)
    grow = 1.0 + j.v
    return {
        "e1": (e1, j.u**2 + grow * j.v**2),
        "d1": (d1_, j.ux**2 + grow * j.vx**2 + j.rho**2),
        "e1_tilde": (et1, j.ux**2 + grow * j.vx**2 + j.rho**2),
        "d1_tilde": (dt1, j.uxx**2 + grow * j.vxx**2 + j.rho_x**2 + grow * j.rho**2),
    }


def _field(s: State, kind: EDSKind, e, f, d, params_used: dict[str, float], floored: int = 0) -> EDSField:
    return EDSField(
        kind=kind,
        e=Field(grid=s.grid, values=e),
        f=Field(grid=s.grid, values=f),
        d=Field(grid=s.grid, values=d),
        params_used=params_used,
        floored_points=floored,
    )


def eds_primary(s: State, p: Params) -> EDSField:
    _require_a2b(p)
    e, f, d = primary_terms(jet_from_state(s), p)
    return _field(s, "primary", e, f, d, {"a": p.a, "b": p.b, "k": p.k})


def eds_secondary(s: State, p: Params, sp: StructureParams) -> EDSField:
    _require_a2b(p)
    check_alphabet(p, sp)
    e, f, d = secondary_terms(jet_from_state(s), p, sp)
    return _field(s, "secondary", e, f, d, sp.model_dump())


def eds_theta(
    s: State,
    p: Params,
    sp: StructureParams,
    c: float = 0.0,
    tol_ineq: float = 1e-10,
) -> tuple[EDSField, EDSField]:
    """Both theta-modified structures; the four lower bounds are verified pointwise with constant c."""
    _require_a2b(p)
    check_alphabet(p, sp)
    j = jet_from_state(s)
    for name, (value, reference) in theta_lower_bounds(j, p, sp).items():
        excess = value - c * reference
        worst = float(excess.min())
        if worst < -tol_ineq * (1.0 + float(np.max(np.abs(value)))):
            raise StructureParameterError(
                f"{name} >= c * reference", f"theta={sp.theta:.6g}, c={c:.6g}, worst={worst:.3e}"
            )
    first = _field(s, "theta_first", *theta_first_terms(j, p, sp), sp.model_dump())
    second = _field(s, "theta_second", *theta_second_terms(j, p, sp), sp.model_dump())
    return first, second


def _floored(s: State) -> tuple[np.ndarray, np.ndarray, int]:
    u, v = s.u.values, s.v.values
    low = min(float(u.min()), float(v.min()))
    if low < 0.0:
        raise DomainError(f"entropy structure needs nonnegative concentrations, minimum {low:.3e}")
    flagged = int(np.count_nonzero(u < CONCENTRATION_FLOOR) + np.count_nonzero(v < CONCENTRATION_FLOOR))
    if flagged:
        logger.warning("%d concentration values raised to the floor %.1e", flagged, CONCENTRATION_FLOOR)
    return np.maximum(u, CONCENTRATION_FLOOR), np.maximum(v, CONCENTRATION_FLOOR), flagged


def boltzmann_terms(
    u: np.ndarray, v: np.ndarray, ux: np.ndarray, vx: np.ndarray, p: Params
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    log_u, log_v = np.log(u), np.log(v)
    e = (u * log_u - u + 1.0) + (v * log_v - v + 1.0)
    f = p.a * log_u * ux + p.b * log_v * vx
    d = p.a * ux**2 / u + p.b * vx**2 / v + p.k * (2.0 * log_v - log_u) * (v**2 - u)
    return e, f, d


def eds_boltzmann(s: State, p: Params) -> EDSField:
    """phi(u) + phi(v) with phi(z) = z log z - z + 1; concentrations below 1e-12 are floored and counted."""
    _require_a2b(p)
    u, v, flagged = _floored(s)
    e, f, d = boltzmann_terms(u, v, d1(u, s.grid), d1(v, s.grid), p)
    return _field(s, "boltzmann", e, f, d, {"a": p.a, "b": p.b, "k": p.k}, flagged)


def rdnm_terms(
    u: np.ndarray, v: np.ndarray, ux: np.ndarray, vx: np.ndarray, p: Params
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n, m = p.stoichiometry
    e = u ** (n + 1) / (n * (n + 1)) + v ** (m + 1) / (m * (m + 1))
    f = (p.a / n) * u**n * ux + (p.b / m) * v**m * vx
    d = p.a * u ** (n - 1) * ux**2 + p.b * v ** (m - 1) * vx**2 + p.k * (u**n - v**m) ** 2
    return e, f, d


def eds_rdnm(s: State, p: Params) -> EDSField:
    if s.min_value() < 0.0:
        raise DomainError("the nA = mB structure needs nonnegative concentrations")
    u, v = s.u.values, s.v.values
    e, f, d = rdnm_terms(u, v, d1(u, s.grid), d1(v, s.grid), p)
    n, m = p.stoichiometry
    return _field(s, "rdnm", e, f, d, {"a": p.a, "b": p.b, "k": p.k, "n": n, "m": m})


def eds(s: State, p: Params, kind: EDSKind, sp: StructureParams | None = None) -> EDSField:
    """Dispatch on kind; structures with free parameters need sp."""
    if kind == "primary":
        return eds_primary(s, p)
    if kind == "boltzmann":
        return eds_boltzmann(s, p)
    if kind == "rdnm":
        return eds_rdnm(s, p)
    if sp is None:
        raise ConfigurationError(f"structure {kind!r} needs structure parameters")
    if kind == "secondary":
        return eds_secondary(s, p, sp)
    first, second = eds_theta(s, p, sp, c=0.0, tol_ineq=np.inf)
    return first if kind == "theta_first" else second
