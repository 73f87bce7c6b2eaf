"""Named initial profiles.

Options are read from ProfileSpec.options; unknown options are rejected so a
typo in a scenario file cannot silently fall back to a default.
"""

import logging
import math

import numpy as np

from domain.grid import periodic_distance
from dynamics.fisher import fisher_kpp_state
from models.errors import ConfigurationError
from models.grid import Grid1D
from models.scenario import ProfileName, ProfileSpec
from models.state import State

logger = logging.getLogger(__name__)

RIEMANN_WIDTH_CELLS = 20
DEFAULT_MODES = 8

_OPTIONS: dict[str, dict[str, float | None]] = {
    "gaussian_bump": {
        "u_base": 1.0, "v_base": 1.0, "u_amplitude": 1.0, "v_amplitude": 0.0, "width": 2.0, "centre": None,
    },
    "riemann_smoothed": {"width": None, "u_left": 1.0, "v_left": 0.0, "u_right": 0.0, "v_right": 1.0},
    "random_smooth": {"u_mean": 1.0, "v_mean": 1.0, "amplitude": 0.5, "modes": DEFAULT_MODES, "seed": None},
    "constant_pair": {"u": 1.0, "v": 1.0},
    "fisher_pulse": {},
    "fisher_wave": {"speed": None, "front": None},
}


def _resolve(name: ProfileName, options: dict[str, float]) -> dict[str, float | None]:
    defaults = _OPTIONS[name]
    unknown = sorted(set(options) - set(defaults))
    if unknown:
        raise ConfigurationError(f"profile {name!r} has no option(s) {', '.join(unknown)}")
    return {**defaults, **options}


def _require_nonnegative(name: str, u: np.ndarray, v: np.ndarray) -> None:
    low = float(min(u.min(), v.min()))
    if low < 0.0:
        raise ConfigurationError(f"profile {name!r} is negative somewhere (min {low:.3e}); adjust its options")


def riemann_step(grid: Grid1D, width: float) -> np.ndarray:
    """Smoothed indicator equal to 1 left of L/2 and 0 right of it.

    On periodic grids the indicator of [0, L/2] is used, so a second
    (reversed) layer sits at x = 0.
    """
    x = grid.x
    if grid.bc == "periodic":
        quarter = 0.25 * grid.length
        return 0.5 * (1.0 + np.tanh((quarter - periodic_distance(x, quarter, grid)) / width))
    return 0.5 * (1.0 - np.tanh((x - 0.5 * grid.length) / width))


def smooth_bump(grid: Grid1D, centre: float, width: float) -> np.ndarray:
    """Gaussian summed over its images, scaled to 1 at `centre`.

    Periodic grids use the periodic images, so the bump is smooth across the
    seam; Neumann grids add the mirror images in both ends, so its end slopes vanish.
    """
    if grid.bc == "periodic":
        period, sources = grid.length, (centre,)
    else:
        period, sources = 2.0 * grid.length, (centre, -centre)
    reach = math.ceil(10.0 * width / period) + 1
    shifts = np.arange(-reach, reach + 1) * period

    def total(points: np.ndarray) -> np.ndarray:
        offsets = np.asarray(points, dtype=float)[..., None] - shifts
        return sum(np.exp(-0.5 * ((offsets - s) / width) ** 2).sum(axis=-1) for s in sources)

    return total(grid.x) / float(total(np.array(centre)))


def band_limited(grid: Grid1D, rng: np.random.Generator, modes: int) -> np.ndarray:
    """Random combination of the lowest `modes` eigenfunctions of the grid's Laplacian, scaled to max |f| = 1."""
    x = grid.x
    L = grid.length
    f = np.zeros_like(x)
    for j in range(1, modes + 1):
        if grid.bc == "periodic":
            c, s = rng.normal(size=2) / j
            f += c * np.cos(2.0 * math.pi * j * x / L) + s * np.sin(2.0 * math.pi * j * x / L)
        else:
            f += rng.normal() / j * np.cos(math.pi * j * x / L)
    scale = float(np.max(np.abs(f)))
    return f / scale if scale > 0 else f


def profile(spec: ProfileSpec, grid: Grid1D, seed: int = 0) -> State:
    """Build the named initial state on `grid`.

    The Fisher-KPP profiles are embedded states with v < 0 somewhere and are
    the only ones exempt from the nonnegativity requirement.
    """
    opts = _resolve(spec.name, dict(spec.options))
    x = grid.x

    if spec.name == "gaussian_bump":
        centre = 0.5 * grid.length if opts["centre"] is None else opts["centre"]
        if opts["width"] <= 0:
            raise ConfigurationError("gaussian_bump width must be positive")
        shape = smooth_bump(grid, centre, opts["width"])
        u = opts["u_base"] + opts["u_amplitude"] * shape
        v = opts["v_base"] + opts["v_amplitude"] * shape

    elif spec.name == "riemann_smoothed":
        width = RIEMANN_WIDTH_CELLS * grid.dx if opts["width"] is None else opts["width"]
        if width <= 0:
            raise ConfigurationError("riemann_smoothed width must be positive")
        step = riemann_step(grid, width)
        u = opts["u_right"] + (opts["u_left"] - opts["u_right"]) * step
        v = opts["v_right"] + (opts["v_left"] - opts["v_right"]) * step
        logger.debug("riemann layer width %.4g (%.1f cells)", width, width / grid.dx)

    elif spec.name == "random_smooth":
        modes = int(opts["modes"])
        if modes < 1:
            raise ConfigurationError("random_smooth needs at least one mode")
        if not 0.0 <= opts["amplitude"] < 1.0:
            raise ConfigurationError("random_smooth amplitude must lie in [0, 1) to stay positive")
        rng = np.random.default_rng(seed if opts["seed"] is None else int(opts["seed"]))
        u = opts["u_mean"] * (1.0 + opts["amplitude"] * band_limited(grid, rng, modes))
        v = opts["v_mean"] * (1.0 + opts["amplitude"] * band_limited(grid, rng, modes))

    elif spec.name == "constant_pair":
        u = np.full(grid.points, opts["u"])
        v = np.full(grid.points, opts["v"])

    elif spec.name == "fisher_pulse":
        return fisher_kpp_state("pulse", grid)

    else:
        return fisher_kpp_state("wave", grid, c=opts["speed"], front=opts["front"])

    _require_nonnegative(spec.name, u, v)
    return State.from_arrays(grid, u, v)
