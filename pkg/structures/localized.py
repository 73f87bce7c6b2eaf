"""Localized energies and the two Gronwall-type inequalities they satisfy.

With chi = sech(eps (x - x0)) and C0 eps^2 = 1/T:

    E(T) + 1/2 int_0^T D dt          <= e^(1/2) E(0)
    E~(T) + 1/(2T) int_0^T t D~ dt   <= (C5/T) E(0)

where E, D integrate the primary density and dissipation against chi and
E~, D~ the second density and its lower dissipation bound d~0.
"""

import logging
import math

import numpy as np
from scipy.integrate import trapezoid

from domain.weights import weight_chi, weighted_integral_values
from models.errors import ConfigurationError
from models.state import Params, Trajectory
from models.structure import GronwallConstants, GronwallReport, LocalizedSeries, StructureParams
from structures.checks import flux_constant, measure_flux_constant, ordering_constant
from structures.jets import jet_from_state
from structures.triples import dtilde0, primary_terms, secondary_terms

logger = logging.getLogger(__name__)


def localized_energies(traj: Trajectory, p: Params, sp: StructureParams, T: float, x0: float) -> LocalizedSeries:
    """E, D, E~, D~ at every snapshot in [0, T]; the run must hold a snapshot exactly at T."""
    if T <= 0:
        raise ConfigurationError(f"observation time must be positive, got {T}")
    if not traj.covers(0.0, T):
        raise ConfigurationError(f"run covers [{traj.times[0]:.6g}, {traj.times[-1]:.6g}], need [0, {T:.6g}]")
    try:
        traj.at(T)
    except KeyError as exc:
        raise ConfigurationError(f"no snapshot at the observation time T={T}") from exc
    C0 = flux_constant(p)
    eps = 1.0 / math.sqrt(C0 * T)
    chi = weight_chi(traj.grid, eps, x0)
    times, E, D, Et, Dt = [], [], [], [], []
    for s in traj.snapshots:
        if s.t > T * (1 + 1e-12):
            break
        j = jet_from_state(s)
        e, _, d = primary_terms(j, p)
        e_tilde, _, _ = secondary_terms(j, p, sp)
        times.append(s.t)
        E.append(weighted_integral_values(e, chi))
        D.append(weighted_integral_values(d, chi))
        Et.append(weighted_integral_values(e_tilde, chi))
        Dt.append(weighted_integral_values(dtilde0(j, p, sp), chi))
    return LocalizedSeries(T=T, eps=eps, x0=chi.x0, times=times, E=E, D=D, Etilde=Et, Dtilde=Dt, C0=C0)


def gronwall_constants(p: Params, sp: StructureParams, C1: float, R: float) -> GronwallConstants:
    """C2 = C1 + b/3 + 2 beta b^2/(9 gamma), C3 = exp(C2/C0), C5 = 2 e^(1/2) C3 C4."""
    if sp.gamma <= 0:
        raise ConfigurationError("gronwall constants need a calibrated gamma > 0")
    C0 = flux_constant(p)
    C2 = C1 + p.b / 3.0 + 2.0 * sp.beta * p.b**2 / (9.0 * sp.gamma)
    C3 = math.exp(C2 / C0)
    C4 = ordering_constant(p, sp)
    return GronwallConstants(
        C0=C0, C1=C1, C2=C2, C3=C3, C4=C4, C5=2.0 * math.sqrt(math.e) * C3 * C4, gamma=sp.gamma, R=R
    )


def measured_constants(traj: Trajectory, p: Params, sp: StructureParams, floor_den: float = 1e-14) -> GronwallConstants:
    """Constants with C1 measured over the whole run and R from its initial data."""
    first = traj.snapshots[0]
    R = 1.0 + first.u.max_abs() + first.v.max_abs()
    C1 = measure_flux_constant(traj, p, sp, floor_den)
    logger.debug("measured C1 = %.4g", C1)
    return gronwall_constants(p, sp, C1, R)


def gronwall_checks(ls: LocalizedSeries, constants: GronwallConstants, tolerance: float = 1e-10) -> GronwallReport:
    t = ls.times
    E0, ET = float(ls.E[0]), float(ls.E[-1])
    energy_lhs = ET + 0.5 * float(trapezoid(ls.D, t))
    energy_rhs = math.sqrt(math.e) * E0
    second_lhs = float(ls.Etilde[-1]) + float(trapezoid(t * ls.Dtilde, t)) / (2.0 * ls.T)
    second_rhs = constants.C5 / ls.T * E0
    initial_bound = math.pi * constants.R**3 / ls.eps
    energy_slack = energy_rhs - energy_lhs
    second_slack = second_rhs - second_lhs
    initial_slack = initial_bound - E0
    passed = min(energy_slack, second_slack, initial_slack) >= -tolerance
    if not passed:
        logger.warning(
            "gronwall check failed at T=%.4g x0=%.4g: slacks %.3e %.3e %.3e",
            ls.T, ls.x0, energy_slack, second_slack, initial_slack,
        )
    return GronwallReport(
        T=ls.T,
        x0=ls.x0,
        energy_lhs=energy_lhs,
        energy_rhs=energy_rhs,
        energy_slack=energy_slack,
        second_lhs=second_lhs,
        second_rhs=second_rhs,
        second_slack=second_slack,
        initial_bound_slack=initial_slack,
        passed=passed,
        tolerance=tolerance,
    )


def random_pairs(traj: Trajectory, count: int, t_min: float, t_max: float | None, seed: int) -> list[tuple[float, float]]:
    """(x0, T) pairs with T drawn from the snapshot times in [t_min, t_max]."""
    rng = np.random.default_rng(seed)
    times = traj.times
    upper = times[-1] if t_max is None else t_max
    eligible = times[(times >= t_min) & (times <= upper)]
    if eligible.size == 0:
        raise ConfigurationError(f"no snapshot in [{t_min}, {upper}] to use as observation time")
    Ts = rng.choice(eligible, size=count, replace=eligible.size < count)
    x0s = rng.uniform(0.0, traj.grid.length, size=count)
    return [(float(x0), float(T)) for x0, T in zip(x0s, Ts)]
