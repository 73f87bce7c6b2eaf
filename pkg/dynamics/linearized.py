"""Linear system for the difference of two solutions along a given run.

    U_t = a U_xx + k (2 v V - U)
    V_t = b V_xx - 2k (2 v V - U)

with v(x, t) taken from a reference trajectory and interpolated linearly in
time between its snapshots.
"""

import logging
import math

import numpy as np

from domain.weights import weighted_integral_values
from dynamics.imex import implicit_diffusion
from models.errors import ConfigurationError, IntegrationError
from models.grid import Field, WeightField
from models.state import State, Trajectory

logger = logging.getLogger(__name__)

STABILITY_FACTOR = 0.4


def _v_at(v_path: Trajectory, times: np.ndarray, V: np.ndarray, t: float) -> np.ndarray:
    j = int(np.searchsorted(times, t, side="right")) - 1
    j = min(max(j, 0), len(times) - 2)
    t0, t1 = times[j], times[j + 1]
    s = min(max((t - t0) / (t1 - t0), 0.0), 1.0)
    return (1.0 - s) * V[j] + s * V[j + 1]


def simulate_linearized(
    v_path: Trajectory,
    U0: Field,
    V0: Field,
    t1: float,
    T: float,
    output_times: np.ndarray | list[float] | None = None,
) -> Trajectory:
    """Integrate from (U0, V0) at time t1 to T along v from v_path.

    The zeroth-order coupling is cooperative (off-diagonal entries k and 2kv
    are nonnegative), so with dt <= 0.4 / (k (1 + 4 max v)) the explicit part
    is monotone and the map (U0, V0) -> (U, V) is linear and order preserving.
    """
    if T <= t1:
        raise ConfigurationError(f"need T > t1, got t1={t1}, T={T}")
    if U0.grid != v_path.grid or V0.grid != v_path.grid:
        raise ConfigurationError("initial perturbation must live on the reference grid")
    if len(v_path.snapshots) < 2 or not v_path.covers(t1, T):
        raise ConfigurationError(
            f"reference run covers [{v_path.times[0]:.6g}, {v_path.times[-1]:.6g}], need [{t1:.6g}, {T:.6g}]"
        )
    p = v_path.params
    grid = v_path.grid
    times = v_path.times
    V_ref = v_path.v_matrix()
    if float(V_ref.min()) < -1e-10:
        raise ConfigurationError("reference v must be nonnegative")

    targets = np.asarray(output_times if output_times is not None else [T], dtype=float)
    targets = targets[(targets > t1) & (targets <= T + 1e-12)]
    if targets.size == 0 or targets[-1] < T - 1e-12:
        targets = np.append(targets, T)

    limit = STABILITY_FACTOR / (p.k * (1.0 + 4.0 * float(V_ref.max())))
    U, V, t = U0.values.copy(), V0.values.copy(), t1
    snapshots = [State.from_arrays(grid, U, V, t1)]
    substeps = []
    for target in targets:
        span = target - t
        steps = max(1, math.ceil(span / limit - 1e-9))
        h = span / steps
        for _ in range(steps):
            v = _v_at(v_path, times, V_ref, t)
            exchange = p.k * (2.0 * v * V - U)
            U = implicit_diffusion(U + h * exchange, grid, p.a, h)
            V = implicit_diffusion(V - 2.0 * h * exchange, grid, p.b, h)
            t += h
        if not (np.all(np.isfinite(U)) and np.all(np.isfinite(V))):
            raise IntegrationError("non-finite perturbation", t)
        t = float(target)
        snapshots.append(State.from_arrays(grid, U, V, t))
        substeps.append(steps)
    logger.debug("linearized: %d snapshots, %d steps", len(snapshots), sum(substeps))
    return Trajectory(
        snapshots=tuple(snapshots), params=p, dt=min(limit, T - t1), scheme="imex-linearized", substeps=tuple(substeps)
    )


def weighted_l1(s: State, w: WeightField) -> float:
    """Integral of chi (2|U| + |V|)."""
    return weighted_integral_values(2.0 * np.abs(s.u.values) + np.abs(s.v.values), w)


def weighted_l1_growth(traj: Trajectory, w: WeightField) -> float:
    """Ratio of the weighted L1 size at the final snapshot to the initial one (a measured C7)."""
    start = weighted_l1(traj.snapshots[0], w)
    if start == 0:
        return 0.0
    return weighted_l1(traj.snapshots[-1], w) / start
