"""IMEX integration of u_t = a u_xx + n k (v^m - u^n), v_t = b v_xx + m k (u^n - v^m).

Diffusion is implicit (one sparse LU per coefficient and step size), the
reaction explicit. With (n, m) = (1, 2) this is the A = 2B system. Under
dt <= 0.4 / (k (n^2 U^(n-1) + m^2 V^(m-1))) every explicit reaction step is
monotone and positivity preserving, and the implicit solve is an M-matrix
inverse, so the scheme obeys a discrete comparison principle.
"""

import logging
import math
from functools import lru_cache

import numpy as np
from scipy.sparse import csc_matrix, diags, identity
from scipy.sparse.linalg import splu

from domain.grid import d2
from models.errors import ConfigurationError, IntegrationError, NumericalError, PositivityViolation
from models.grid import Grid1D
from models.state import Params, State, Trajectory

logger = logging.getLogger(__name__)

STABILITY_FACTOR = 0.4


def laplacian(grid: Grid1D) -> csc_matrix:
    """Sparse three-point Laplacian with periodic wrap or Neumann reflection."""
    n = grid.points
    lap = diags([np.ones(n - 1), -2.0 * np.ones(n), np.ones(n - 1)], [-1, 0, 1], format="lil")
    if grid.bc == "periodic":
        lap[0, n - 1] = 1.0
        lap[n - 1, 0] = 1.0
    else:
        lap[0, 1] = 2.0
        lap[n - 1, n - 2] = 2.0
    return csc_matrix(lap / grid.dx**2)


@lru_cache(maxsize=64)
def _factorized(grid: Grid1D, coeff: float, dt: float):
    logger.debug("factorizing I - dt*%.4g*L (n=%d, dt=%.4g)", coeff, grid.points, dt)
    system = identity(grid.points, format="csc") - (dt * coeff) * laplacian(grid)
    return splu(csc_matrix(system))


def implicit_diffusion(values: np.ndarray, grid: Grid1D, coeff: float, dt: float) -> np.ndarray:
    """Solve (I - dt*coeff*L) y = values."""
    return _factorized(grid, float(coeff), float(dt)).solve(values)


def reaction(u: np.ndarray, v: np.ndarray, p: Params) -> tuple[np.ndarray, np.ndarray]:
    n, m = p.stoichiometry
    imbalance = v**m - u**n
    return n * p.k * imbalance, -m * p.k * imbalance


def rd_rhs(s: State, p: Params) -> tuple[np.ndarray, np.ndarray]:
    """Right-hand sides (u_t, v_t) with the discrete Laplacian; no sign requirements on s."""
    ru, rv = reaction(s.u.values, s.v.values, p)
    return p.a * d2(s.u.values, s.grid) + ru, p.b * d2(s.v.values, s.grid) + rv


def stationarity_residual(s: State, p: Params) -> float:
    """max |(u_t, v_t)| of the semi-discrete system at s."""
    ut, vt = rd_rhs(s, p)
    return float(max(np.max(np.abs(ut)), np.max(np.abs(vt))))


def dt_max(p: Params, u_max: float, v_max: float) -> float:
    """Largest step keeping the explicit reaction monotone and positive."""
    n, m = p.stoichiometry
    stiffness = n * n * max(u_max, 0.0) ** (n - 1) + m * m * max(v_max, 0.0) ** (m - 1)
    return STABILITY_FACTOR / (p.k * stiffness)


def apriori_bounds(u0: np.ndarray, v0: np.ndarray, p: Params) -> tuple[float, float]:
    """Sup bounds preserved by the flow: u^n, v^m stay below max(sup u0^n, sup v0^m)."""
    n, m = p.stoichiometry
    level = max(float(np.max(np.abs(u0))) ** n, float(np.max(np.abs(v0))) ** m)
    return level ** (1.0 / n), level ** (1.0 / m)


def _advance(
    u: np.ndarray,
    v: np.ndarray,
    t: float,
    p: Params,
    grid: Grid1D,
    dt: float,
    steps: int,
    tol_pos: float,
    enforce_positivity: bool,
) -> tuple[np.ndarray, np.ndarray, float]:
    for _ in range(steps):
        ru, rv = reaction(u, v, p)
        u = implicit_diffusion(u + dt * ru, grid, p.a, dt)
        v = implicit_diffusion(v + dt * rv, grid, p.b, dt)
        t += dt
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise IntegrationError("non-finite concentration", t)
        if enforce_positivity:
            for species, values in (("u", u), ("v", v)):
                low = float(values.min())
                if low < -tol_pos:
                    raise PositivityViolation(species, low, t)
    return u, v, t


def step_rd(
    s: State,
    p: Params,
    dt: float,
    tol_pos: float = 1e-10,
    enforce_positivity: bool = True,
) -> State:
    """One IMEX step of length dt."""
    if dt <= 0:
        raise ConfigurationError(f"step size must be positive, got {dt}")
    if enforce_positivity and s.min_value() < -tol_pos:
        raise PositivityViolation("u/v", s.min_value(), s.t)
    u, v, t = _advance(
        s.u.values, s.v.values, s.t, p, s.grid, dt, 1, tol_pos, enforce_positivity
    )
    return State.from_arrays(s.grid, u, v, t)


def _check_invariant_bounds(u: np.ndarray, v: np.ndarray, u0: np.ndarray, v0: np.ndarray, t: float, tol: float) -> None:
    sup_u0, sup_v0 = float(np.max(u0)), float(np.max(v0))
    sup_u, sup_v = float(np.max(u)), float(np.max(v))
    first = max(sup_u, sup_v**2) - max(sup_u0, sup_v0**2)
    second = (2.0 * sup_u + sup_v) - (2.0 * sup_u0 + sup_v0)
    if first > tol or second > tol:
        raise NumericalError(
            "invariant-region bound violated",
            {"t": t, "sup_excess": first, "mass_sup_excess": second},
        )


def _integrate(
    initial: State,
    p: Params,
    T: float,
    output_times: np.ndarray | list[float] | None,
    dt: float | None,
    tol_pos: float,
    tol_bound: float,
    enforce_positivity: bool,
    scheme: str,
) -> Trajectory:
    if T <= 0:
        raise ConfigurationError(f"horizon must be positive, got {T}")
    t0 = initial.t
    t_end = t0 + T
    targets = np.asarray(output_times if output_times is not None else [t_end], dtype=float)
    targets = targets[(targets > t0) & (targets <= t_end + 1e-12)]
    if targets.size == 0 or targets[-1] < t_end - 1e-12:
        targets = np.append(targets, t_end)
    if np.any(np.diff(targets) <= 0):
        raise ConfigurationError("output times must be strictly increasing")
    if enforce_positivity and initial.min_value() < -tol_pos:
        raise PositivityViolation("u/v", initial.min_value(), t0)

    grid = initial.grid
    u0, v0 = initial.u.values, initial.v.values
    u_bound, v_bound = apriori_bounds(u0, v0, p)
    check_bounds = enforce_positivity and p.stoichiometry == (1, 2)

    u, v, t = u0, v0, t0
    snapshots = [initial]
    substeps = []
    dt_used = 0.0
    for target in targets:
        if enforce_positivity:
            limit = dt_max(p, u_bound, v_bound)
        else:
            limit = dt_max(p, float(np.max(np.abs(u))), float(np.max(np.abs(v))))
        if dt is not None:
            limit = min(limit, dt)
        span = target - t
        steps = max(1, math.ceil(span / limit - 1e-9))
        h = span / steps
        u, v, _ = _advance(u, v, t, p, grid, h, steps, tol_pos, enforce_positivity)
        t = float(target)
        if check_bounds:
            _check_invariant_bounds(u, v, u0, v0, t, tol_bound)
        snapshots.append(State.from_arrays(grid, u, v, t))
        substeps.append(steps)
        dt_used = max(dt_used, h)
    logger.debug("%s: %d snapshots, %d steps, dt<=%.4g", scheme, len(snapshots), sum(substeps), dt_used)
    return Trajectory(
        snapshots=tuple(snapshots), params=p, dt=dt_used, scheme=scheme, substeps=tuple(substeps)
    )


def simulate_rd(
    initial: State,
    p: Params,
    T: float,
    output_times: np.ndarray | list[float] | None = None,
    dt: float | None = None,
    tol_pos: float = 1e-10,
    tol_bound: float = 1e-8,
    enforce_positivity: bool = True,
) -> Trajectory:
    """Integrate the A = 2B system over [t0, t0 + T]; the initial state is the first snapshot.

    `dt` caps the automatic step. With enforce_positivity=False the step bound
    follows the running max |u|, |v| and no sign or invariant-region checks are made.
    """
    if p.stoichiometry != (1, 2):
        raise ConfigurationError("simulate_rd integrates A = 2B; use simulate_rdnm for other stoichiometry")
    return _integrate(initial, p, T, output_times, dt, tol_pos, tol_bound, enforce_positivity, "imex-euler")


def simulate_rdnm(
    initial: State,
    p: Params,
    T: float,
    output_times: np.ndarray | list[float] | None = None,
    dt: float | None = None,
    tol_pos: float = 1e-10,
    tol_bound: float = 1e-8,
) -> Trajectory:
    """Integrate nA = mB with the same scheme as simulate_rd.

    For (n, m) = (1, 2) the invariant-region bound is checked within tol_bound, as in simulate_rd.
    """
    if p.n_st is None:
        raise ConfigurationError("simulate_rdnm needs n_st and m_st")
    return _integrate(initial, p, T, output_times, dt, tol_pos, tol_bound, True, "imex-euler-nm")


def kinetic_map(u: float, v: float, p: Params, dt: float, steps: int) -> tuple[float, float]:
    """The scheme restricted to homogeneous data (diffusion acts trivially on constants)."""
    n, m = p.stoichiometry
    for _ in range(steps):
        imbalance = v**m - u**n
        u, v = u + dt * n * p.k * imbalance, v - dt * m * p.k * imbalance
    return u, v
