"""Spatially homogeneous kinetics and the comparison checks built on them."""

import logging

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from dynamics.imex import kinetic_map
from models.errors import ConfigurationError, NumericalError
from models.state import EnvelopeReport, KineticPath, Params, Trajectory
from models.structure import MarginReport

logger = logging.getLogger(__name__)

ODE_RTOL = 1e-12
ODE_ATOL = 1e-14


def equilibrium_from_data(u0: float, v0: float) -> tuple[float, float]:
    """Limit of the kinetics: v* is the positive root of 2v^2 + v = 2u0 + v0, u* = v*^2."""
    if u0 < 0 or v0 < 0:
        raise ConfigurationError(f"kinetic data must be nonnegative, got ({u0}, {v0})")
    mass = 2.0 * u0 + v0
    v_star = 2.0 * mass / (1.0 + np.sqrt(1.0 + 8.0 * mass))
    return float(v_star * v_star), float(v_star)


def kinetic_lower_bound(delta: float) -> float:
    """Lower bound on v for data with v0 >= delta (the equilibrium reached from (0, delta))."""
    return equilibrium_from_data(0.0, delta)[1]


def rdnm_equilibrium(u0: float, v0: float, p: Params) -> tuple[float, float]:
    """Equilibrium u^n = v^m on the line m*u + n*v = m*u0 + n*v0."""
    if u0 < 0 or v0 < 0:
        raise ConfigurationError(f"kinetic data must be nonnegative, got ({u0}, {v0})")
    n, m = p.stoichiometry
    level = m * u0 + n * v0
    if level == 0:
        return 0.0, 0.0

    def excess(v: float) -> float:
        return m * v ** (m / n) + n * v - level

    v_star = brentq(excess, 0.0, level / n, xtol=1e-15, rtol=1e-14)
    return float(v_star ** (m / n)), float(v_star)


def _kinetic_rhs(p: Params):
    n, m = p.stoichiometry

    def rhs(_t: float, y: np.ndarray) -> list[float]:
        imbalance = y[1] ** m - y[0] ** n
        return [n * p.k * imbalance, -m * p.k * imbalance]

    return rhs


def simulate_kinetic_ode(
    u0: float,
    v0: float,
    p: Params,
    T: float,
    samples: int = 201,
) -> KineticPath:
    """High-order adaptive integration of the reaction ODE (DOP853)."""
    if u0 < 0 or v0 < 0:
        raise ConfigurationError(f"kinetic data must be nonnegative, got ({u0}, {v0})")
    if T <= 0:
        raise ConfigurationError(f"horizon must be positive, got {T}")
    n, m = p.stoichiometry
    times = np.linspace(0.0, T, samples)
    sol = solve_ivp(
        _kinetic_rhs(p), (0.0, T), [u0, v0],
        method="DOP853", t_eval=times, rtol=ODE_RTOL, atol=ODE_ATOL,
    )
    if not sol.success:
        raise NumericalError("kinetic ODE integration failed", {"message": sol.message})
    return KineticPath(times=sol.t, u_bar=sol.y[0], v_bar=sol.y[1], conserved=m * u0 + n * v0)


def _ode_at(u0: float, v0: float, p: Params, times: np.ndarray) -> np.ndarray:
    sol = solve_ivp(
        _kinetic_rhs(p), (times[0], times[-1]), [u0, v0],
        method="DOP853", t_eval=times, rtol=ODE_RTOL, atol=ODE_ATOL,
    )
    if not sol.success:
        raise NumericalError("envelope ODE integration failed", {"message": sol.message})
    return sol.y


def _scheme_envelope(u0: float, v0: float, traj: Trajectory) -> np.ndarray:
    env = [(u0, v0)]
    u, v = u0, v0
    times = traj.times
    for i, steps in enumerate(traj.substeps):
        h = (times[i + 1] - times[i]) / steps
        u, v = kinetic_map(u, v, traj.params, h, steps)
        env.append((u, v))
    return np.array(env).T


def ode_envelope_check(traj: Trajectory, tol_bound: float = 1e-8) -> EnvelopeReport:
    """Compare the run with kinetic solutions started from the sup and inf of the data.

    The pass/fail margins use the scheme's own kinetic map, for which the
    discrete comparison principle is exact; the deviation from a high-order ODE
    solve of the same envelopes is reported alongside.
    """
    first = traj.snapshots[0]
    u0, v0 = first.u.values, first.v.values
    if min(u0.min(), v0.min()) < 0:
        raise ConfigurationError("envelope check needs nonnegative initial data")
    U, V = traj.u_matrix(), traj.v_matrix()
    upper = _scheme_envelope(float(u0.max()), float(v0.max()), traj)
    lower = _scheme_envelope(float(u0.min()), float(v0.min()), traj)

    upper_margin = min(
        float(np.min(upper[0][:, None] - U)),
        float(np.min(upper[1][:, None] - V)),
    )
    lower_margin = min(
        float(np.min(U - lower[0][:, None])),
        float(np.min(V - lower[1][:, None])),
    )
    delta = float(v0.min())
    lower_bound_margin = float(np.min(V) - kinetic_lower_bound(delta))

    deviation = 0.0
    if traj.substeps:
        times = traj.times
        ode_upper = _ode_at(float(u0.max()), float(v0.max()), traj.params, times)
        ode_lower = _ode_at(float(u0.min()), float(v0.min()), traj.params, times)
        deviation = float(max(np.max(np.abs(ode_upper - upper)), np.max(np.abs(ode_lower - lower))))

    passed = min(upper_margin, lower_margin, lower_bound_margin) >= -tol_bound
    if not passed:
        logger.warning(
            "envelope check failed: upper %.3e lower %.3e bound %.3e",
            upper_margin, lower_margin, lower_bound_margin,
        )
    return EnvelopeReport(
        upper_margin=upper_margin,
        lower_margin=lower_margin,
        lower_bound_margin=lower_bound_margin,
        oracle_deviation=deviation,
        tolerance=tol_bound,
        passed=passed,
    )


def comparison_check(lower: Trajectory, upper: Trajectory, tol_bound: float = 1e-8) -> MarginReport:
    """Order preservation between two runs whose initial data are ordered."""
    if len(lower.snapshots) != len(upper.snapshots) or not np.allclose(lower.times, upper.times):
        raise ConfigurationError("comparison needs runs sampled at the same times")
    gap_u = upper.u_matrix() - lower.u_matrix()
    gap_v = upper.v_matrix() - lower.v_matrix()
    gap = np.minimum(gap_u, gap_v)
    idx = np.unravel_index(int(np.argmin(gap)), gap.shape)
    margin = float(gap[idx])
    return MarginReport(
        name="comparison",
        min_margin=margin,
        tolerance=tol_bound,
        passed=margin >= -tol_bound,
        worst_t=float(lower.times[idx[0]]),
        worst_x=float(lower.grid.x[idx[1]]),
    )
