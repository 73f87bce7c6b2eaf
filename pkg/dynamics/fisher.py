"""Fisher-KPP solutions embedded in the a = b = k = 1 system.

If z solves z_t = z_xx + 3z(1 - z) then (u, v) = (1 - 3z/4, -1 + 3z/2)
solves the reaction-diffusion system, and rho = u - v^2 = (9/4) z (1 - z).
Such states leave the positive cone (v = -1 where z = 0).

Near z = 0 the (u, v) variables resolve z only to about 1e-16, and z = 0 is
unstable with rate 3, so long runs evolve z with the same IMEX steps and
embed the snapshots; for a = b = k = 1 the two schemes coincide in exact arithmetic.
"""

import logging
import math
from typing import Literal

import numpy as np
from scipy.integrate import solve_ivp

from dynamics.imex import dt_max, implicit_diffusion
from models.errors import ConfigurationError, IntegrationError, NumericalError
from models.grid import Grid1D
from models.state import Params, State, Trajectory

logger = logging.getLogger(__name__)

MIN_MONOTONE_SPEED = 2.0 * math.sqrt(3.0)
MANIFOLD_OFFSET = 1e-8
PROFILE_FLOOR = 1e-10


def embed(z: np.ndarray, grid: Grid1D, t: float = 0.0) -> State:
    z = np.asarray(z, dtype=float)
    return State.from_arrays(grid, 1.0 - 0.75 * z, -1.0 + 1.5 * z, t)


def z_of(s: State) -> np.ndarray:
    """Invert the embedding through v."""
    return (s.v.values + 1.0) / 1.5


def pulse_profile(x: np.ndarray, centre: float) -> np.ndarray:
    """Stationary pulse z = 1 - (3/2) sech^2(sqrt(3) (x - centre)/2)."""
    arg = 0.5 * math.sqrt(3.0) * (x - centre)
    return 1.0 - 1.5 / np.cosh(arg) ** 2


def wave_profile(c: float, xi: np.ndarray) -> np.ndarray:
    """Front phi(xi) of phi'' + c phi' + 3 phi (1 - phi) = 0, phi(-inf) = 1, phi(+inf) = 0, phi(0) = 1/2.

    Shooting from the unstable manifold of phi = 1; tails beyond the
    integrated range follow the linearized exponentials.
    """
    if c < MIN_MONOTONE_SPEED - 1e-12:
        raise ConfigurationError(f"wave speed {c} below 2*sqrt(3): the front oscillates around 0")
    grow = 0.5 * (-c + math.sqrt(c * c + 12.0))
    decay = 0.5 * (-c + math.sqrt(max(0.0, c * c - 12.0)))

    def rhs(_s: float, y: np.ndarray) -> list[float]:
        return [y[1], -c * y[1] - 3.0 * y[0] * (1.0 - y[0])]

    def reached_floor(_s: float, y: np.ndarray) -> float:
        return y[0] - PROFILE_FLOOR

    reached_floor.terminal = True
    reached_floor.direction = -1

    start = [1.0 - MANIFOLD_OFFSET, -grow * MANIFOLD_OFFSET]
    sol = solve_ivp(
        rhs, (0.0, 1e4), start, method="DOP853", dense_output=True,
        events=reached_floor, rtol=1e-11, atol=1e-14,
    )
    if not sol.success or sol.t_events[0].size == 0:
        raise NumericalError("wave profile did not reach the floor", {"speed": c, "message": sol.message})
    if float(sol.y[0].min()) < 0.0:
        raise NumericalError("wave profile became negative", {"speed": c, "minimum": float(sol.y[0].min())})
    end = float(sol.t_events[0][0])

    s = np.linspace(0.0, end, 20001)
    phi = sol.sol(s)[0]
    half = float(np.interp(-0.5, -phi, s))  # phi decreases along s
    logger.debug("wave profile c=%.4g: integrated length %.4g, half point %.4g", c, end, half)

    arg = np.asarray(xi, dtype=float) + half
    out = np.interp(arg, s, phi)
    left = arg < 0.0
    out[left] = 1.0 - MANIFOLD_OFFSET * np.exp(grow * arg[left])
    right = arg > end
    out[right] = PROFILE_FLOOR * np.exp(decay * (arg[right] - end))
    return out


def fisher_kpp_state(
    kind: Literal["pulse", "wave"],
    grid: Grid1D,
    c: float | None = None,
    front: float | None = None,
) -> State:
    """Embedded pulse (centred at L/2) or front (phi = 1/2 at `front`, default L/4)."""
    x = grid.x
    if kind == "pulse":
        return embed(pulse_profile(x, 0.5 * grid.length), grid)
    if kind == "wave":
        speed = MIN_MONOTONE_SPEED if c is None else c
        position = 0.25 * grid.length if front is None else front
        return embed(wave_profile(speed, x - position), grid)
    raise ConfigurationError(f"unknown Fisher-KPP state kind {kind!r}")


def simulate_fisher_embedded(
    initial: State,
    p: Params,
    T: float,
    output_times: np.ndarray | list[float] | None = None,
    dt: float | None = None,
) -> Trajectory:
    """Run an embedded state through the IMEX scheme in the z variable.

    Step sizes follow simulate_rd with enforce_positivity=False, so each
    snapshot is the embedding of what the (u, v) scheme computes without the
    cancellation at v = -1.
    """
    if (p.a, p.b, p.k) != (1.0, 1.0, 1.0) or p.stoichiometry != (1, 2):
        raise ConfigurationError("the Fisher-KPP embedding needs a = b = k = 1 and the A = 2B reaction")
    if T <= 0:
        raise ConfigurationError(f"horizon must be positive, got {T}")
    grid = initial.grid
    t = initial.t
    t_end = t + T
    targets = np.asarray(output_times if output_times is not None else [t_end], dtype=float)
    targets = targets[(targets > t) & (targets <= t_end + 1e-12)]
    if targets.size == 0 or targets[-1] < t_end - 1e-12:
        targets = np.append(targets, t_end)

    z = np.maximum(z_of(initial), 0.0)
    snapshots = [initial]
    substeps = []
    dt_used = 0.0
    for target in targets:
        s = embed(z, grid)
        limit = dt_max(p, float(np.max(np.abs(s.u.values))), float(np.max(np.abs(s.v.values))))
        if dt is not None:
            limit = min(limit, dt)
        steps = max(1, math.ceil((target - t) / limit - 1e-9))
        h = (target - t) / steps
        for _ in range(steps):
            z = implicit_diffusion(z + 3.0 * h * z * (1.0 - z), grid, 1.0, h)
        t = float(target)
        if not np.all(np.isfinite(z)):
            raise IntegrationError("non-finite Fisher-KPP density", t)
        snapshots.append(embed(z, grid, t))
        substeps.append(steps)
        dt_used = max(dt_used, h)
    logger.debug("fisher-embedded: %d snapshots, %d steps, dt<=%.4g", len(snapshots), sum(substeps), dt_used)
    return Trajectory(
        snapshots=tuple(snapshots), params=p, dt=dt_used, scheme="imex-euler-fisher", substeps=tuple(substeps)
    )
