"""Pointwise inequalities between structures, swept over every snapshot of a run."""

import numpy as np

from domain.grid import d1
from models.errors import ConfigurationError
from models.state import Params, State, Trajectory
from models.structure import MarginReport, StructureParams
from structures.calibration import gamma_max
from structures.jets import jet_from_state
from structures.triples import (
    CONCENTRATION_FLOOR,
    boltzmann_terms,
    dtilde0,
    eds_rdnm,
    primary_terms,
    rdnm_terms,
    secondary_flux_part,
    secondary_terms,
)


def flux_constant(p: Params) -> float:
    """C0 = max(2a, 3b/2) in f^2 <= C0 e d."""
    return max(2.0 * p.a, 1.5 * p.b)


def ordering_constant(p: Params, sp: StructureParams) -> float:
    """C4 with e~ <= C4 d; max(1, (a + b)/(2a)) for the default alpha, beta and k = 1."""
    return max(sp.alpha / (2.0 * p.a), sp.beta / (2.0 * p.b), 1.0 / (2.0 * p.k))


def _states(source: Trajectory | State | list[State]) -> list[State]:
    if isinstance(source, Trajectory):
        return list(source.snapshots)
    if isinstance(source, State):
        return [source]
    return list(source)


def _sweep(name: str, states: list[State], margin_of, tol: float) -> MarginReport:
    worst, worst_t, worst_x = np.inf, None, None
    for s in states:
        margin = margin_of(s)
        i = int(np.argmin(margin))
        if margin[i] < worst:
            worst, worst_t, worst_x = float(margin[i]), s.t, float(s.grid.x[i])
    return MarginReport(
        name=name,
        min_margin=worst,
        tolerance=tol,
        passed=worst >= -tol,
        worst_t=worst_t,
        worst_x=worst_x,
    )


def flux_bound_check(source, p: Params, tol_ineq: float = 1e-10) -> MarginReport:
    """C0 e d - f^2 for the primary structure."""
    C0 = flux_constant(p)

    def margin(s: State) -> np.ndarray:
        e, f, d = primary_terms(jet_from_state(s), p)
        return C0 * e * d - f**2

    return _sweep("flux_bound", _states(source), margin, tol_ineq)


def ordering_check(source, p: Params, sp: StructureParams, tol_ineq: float = 1e-10) -> MarginReport:
    """C4 d - e~: the second density is dominated by the first dissipation."""
    C4 = ordering_constant(p, sp)

    def margin(s: State) -> np.ndarray:
        j = jet_from_state(s)
        _, _, d = primary_terms(j, p)
        e_tilde, _, _ = secondary_terms(j, p, sp)
        return C4 * d - e_tilde

    return _sweep("ordering", _states(source), margin, tol_ineq)


def dpos_check(source, p: Params, sp: StructureParams, tol_pos: float = 1e-10) -> MarginReport:
    """d~ - d~0 pointwise; detail carries gamma and the largest feasible gamma."""

    def margin(s: State) -> np.ndarray:
        j = jet_from_state(s)
        _, _, d_tilde = secondary_terms(j, p, sp)
        return d_tilde - dtilde0(j, p, sp)

    report = _sweep("dpos", _states(source), margin, tol_pos)
    return report.model_copy(
        update={"detail": {"gamma": sp.gamma, "gamma_max": gamma_max(p, sp.alpha, sp.beta)}}
    )


def positivity_check(source, p: Params, tol_pos: float = 1e-10) -> MarginReport:
    """min(e, d) of the primary structure."""

    def margin(s: State) -> np.ndarray:
        e, _, d = primary_terms(jet_from_state(s), p)
        return np.minimum(e, d)

    return _sweep("primary_signs", _states(source), margin, tol_pos)


def rdnm_signs_check(source, p: Params, tol_pos: float = 1e-10) -> MarginReport:
    """min(e, d) of the nA = mB structure."""

    def margin(s: State) -> np.ndarray:
        field = eds_rdnm(s, p)
        return np.minimum(field.e.values, field.d.values)

    return _sweep("rdnm_signs", _states(source), margin, tol_pos)


def _ratio_sup(states: list[State], ratio_of, floor_den: float) -> float:
    best = 0.0
    for s in states:
        num, den = ratio_of(s)
        keep = den > floor_den
        if np.any(keep):
            best = max(best, float(np.max(num[keep] / den[keep])))
    return best


def measure_flux_constant(source, p: Params, sp: StructureParams, floor_den: float = 1e-14) -> float:
    """C1 = sup f~0^2 / (e~ d~0), excluding points with e~ d~0 <= floor_den."""

    def ratio(s: State):
        j = jet_from_state(s)
        e_tilde, _, _ = secondary_terms(j, p, sp)
        return secondary_flux_part(j, p, sp) ** 2, e_tilde * dtilde0(j, p, sp)

    return _ratio_sup(_states(source), ratio, floor_den)


def flux_ratio_sup(source, p: Params, kind: str, floor_den: float = 1e-14) -> float:
    """Measured constant of the flux bound: |f|^2/(e d log(2 + e)) for boltzmann, f^2/(e d) for rdnm."""
    if kind not in ("boltzmann", "rdnm"):
        raise ConfigurationError(f"no flux ratio defined for structure {kind!r}")

    def ratio(s: State):
        u, v = s.u.values, s.v.values
        ux, vx = d1(u, s.grid), d1(v, s.grid)
        if kind == "boltzmann":
            u, v = np.maximum(u, CONCENTRATION_FLOOR), np.maximum(v, CONCENTRATION_FLOOR)
            e, f, d = boltzmann_terms(u, v, ux, vx, p)
            return f**2, e * d * np.log(2.0 + e)
        e, f, d = rdnm_terms(u, v, ux, vx, p)
        return f**2, e * d

    return _ratio_sup(_states(source), ratio, floor_den)
