"""Discrete residuals of the local balance laws and of the rho identity."""

import logging
import math

import numpy as np

from domain.grid import d1
from dynamics.fields import rho_rhs
from dynamics.imex import rd_rhs
from models.errors import ConfigurationError, FitError
from models.state import Params, State, Trajectory
from models.structure import EDSKind, ResidualReport, SlavingReport, StructureParams
from structures.decay import decay_fit
from structures.jets import jet_from_state
from structures.triples import CONCENTRATION_FLOOR, eds

logger = logging.getLogger(__name__)


def _uniform_spacing(traj: Trajectory) -> float:
    if len(traj.snapshots) < 3:
        raise ConfigurationError("balance residuals need at least 3 snapshots")
    gaps = np.diff(traj.times)
    if not np.allclose(gaps, gaps[0], rtol=1e-9, atol=0.0):
        raise ConfigurationError("balance residuals need uniformly spaced snapshots")
    return float(gaps[0])


def chain_rule_rate(s: State, p: Params, kind: EDSKind, sp: StructureParams | None = None) -> np.ndarray:
    """de/dt at s from the semi-discrete right-hand sides."""
    ut, vt = rd_rhs(s, p)
    j = jet_from_state(s)
    u, v = j.u, j.v
    if kind == "boltzmann":
        u, v = np.maximum(u, CONCENTRATION_FLOOR), np.maximum(v, CONCENTRATION_FLOOR)
        return np.log(u) * ut + np.log(v) * vt
    if kind == "rdnm":
        n, m = p.stoichiometry
        return u**n / n * ut + v**m / m * vt
    if kind in ("primary", "theta_first"):
        rate = u * ut + 0.5 * v**2 * vt
        if kind == "theta_first":
            rate = rate + sp.theta * j.w * (2.0 * ut + vt)
        return rate
    grid = s.grid
    rho_t = ut - 2.0 * v * vt
    rate = (
        sp.alpha * j.ux * d1(ut, grid)
        + 0.5 * sp.beta * vt * j.vx**2
        + sp.beta * v * j.vx * d1(vt, grid)
        + j.rho * rho_t
    )
    if kind == "theta_second":
        rate = rate + sp.theta * j.wx * d1(2.0 * ut + vt, grid)
    return rate


def _divergence_form(s: State, p: Params, kind: EDSKind, sp: StructureParams | None):
    field = eds(s, p, kind, sp)
    return field.e.values, d1(field.f.values, s.grid) - field.d.values


def balance_residual(
    traj: Trajectory,
    kind: EDSKind,
    sp: StructureParams | None = None,
    rate: str = "flux",
) -> ResidualReport:
    """Max-norm residual of (e(t + h) - e(t))/h - [f_x - d]_avg between consecutive snapshots.

    rate="flux" uses f_x - d (time and space discretization both enter);
    rate="chain" uses de/dt from the right-hand sides, isolating the time
    discretization.
    """
    if rate not in ("flux", "chain"):
        raise ConfigurationError(f"unknown rate {rate!r}")
    h = _uniform_spacing(traj)
    p = traj.params
    densities, rates = [], []
    for s in traj.snapshots:
        e, flux_rate = _divergence_form(s, p, kind, sp)
        densities.append(e)
        rates.append(flux_rate if rate == "flux" else chain_rule_rate(s, p, kind, sp))
    per_interval = []
    for i in range(len(densities) - 1):
        r = (densities[i + 1] - densities[i]) / h - 0.5 * (rates[i] + rates[i + 1])
        per_interval.append(float(np.max(np.abs(r))))
    return ResidualReport(
        name=f"balance_{kind}",
        norm=max(per_interval),
        times=[float(t) for t in traj.times[:-1]],
        per_interval=per_interval,
    )


def instantaneous_balance_residual(
    s: State, p: Params, kind: EDSKind, sp: StructureParams | None = None
) -> float:
    """max |de/dt - f_x + d| at one state; measures the stencil consistency of the structure."""
    _, flux_rate = _divergence_form(s, p, kind, sp)
    return float(np.max(np.abs(chain_rule_rate(s, p, kind, sp) - flux_rate)))


def refinement_order(coarse: float, fine: float, factor: float = 2.0) -> float:
    """Observed order log(coarse/fine)/log(factor)."""
    if coarse <= 0 or fine <= 0:
        raise FitError(f"refinement order needs positive errors, got {coarse:.3e} and {fine:.3e}")
    return math.log(coarse / fine) / math.log(factor)


def rho_residual(traj: Trajectory) -> ResidualReport:
    """Residual of rho_t = a rho_xx - k(1 + 4v) rho + 2(a - b) v v_xx + 2a v_x^2 along the run."""
    if len(traj.snapshots) < 2:
        raise ConfigurationError("rho residual needs at least 2 snapshots")
    p, grid = traj.params, traj.grid
    times = traj.times
    U, V = traj.u_matrix(), traj.v_matrix()
    rho = U - V**2
    per_interval = []
    for i in range(len(times) - 1):
        h = times[i + 1] - times[i]
        rate = 0.5 * (rho_rhs(U[i], V[i], p, grid) + rho_rhs(U[i + 1], V[i + 1], p, grid))
        per_interval.append(float(np.max(np.abs((rho[i + 1] - rho[i]) / h - rate))))
    return ResidualReport(
        name="rho_identity",
        norm=max(per_interval),
        times=[float(t) for t in times[:-1]],
        per_interval=per_interval,
    )


def slaving_ansatz(s: State, p: Params) -> np.ndarray:
    """(2(a - b) v v_xx + 2a v_x^2) / (k (1 + 4v))."""
    j = jet_from_state(s)
    return (2.0 * (p.a - p.b) * j.v * j.vxx + 2.0 * p.a * j.vx**2) / (p.k * (1.0 + 4.0 * j.v))


def slaving_check(traj: Trajectory, window: tuple[float, float] | None = None) -> SlavingReport:
    """sup |rho - ansatz| and sup |rho| over time, each fitted on `window` when given."""
    p = traj.params
    times, discrepancy, rho_norm = [], [], []
    for s in traj.snapshots:
        if s.t <= 0:
            continue
        rho = s.u.values - s.v.values**2
        times.append(s.t)
        discrepancy.append(float(np.max(np.abs(rho - slaving_ansatz(s, p)))))
        rho_norm.append(float(np.max(np.abs(rho))))
    report = SlavingReport(times=times, discrepancy=discrepancy, rho_norm=rho_norm)
    if window is None:
        return report
    fits = {}
    for name, values in (("discrepancy_fit", discrepancy), ("rho_fit", rho_norm)):
        try:
            fits[name] = decay_fit(times, values, window)
        except FitError as exc:
            logger.warning("slaving %s skipped: %s", name, exc)
    return report.model_copy(update=fits)
