"""Physical-space kernels S(x, t) by Fourier quadrature and their L1 decay."""

import logging
import math

import numpy as np
from scipy.integrate import trapezoid

from models.errors import ConfigurationError, FitError
from models.kernel import KernelDecay, KernelParams, Projection
from spectral.symbol import expA_closed, symbol_actions
from structures.decay import decay_fit

logger = logging.getLogger(__name__)

SYMBOL_CUTOFF = 1e-14
TAIL_CUTOFF = 1e-13
MAX_XI_POINTS = 2_000_000


def xi_cutoff(t: float, kp: KernelParams) -> float:
    """Xi with exp(-min(a, b) Xi^2 t) = 1e-14."""
    return math.sqrt(math.log(1.0 / SYMBOL_CUTOFF) / (min(kp.a, kp.b) * t))


def physical_window(t: float, kp: KernelParams) -> float:
    """X with the Gaussian envelope exp(-X^2/(4 max(a, b) t)) = 1e-13."""
    return math.sqrt(4.0 * max(kp.a, kp.b) * t * math.log(1.0 / TAIL_CUTOFF))


def default_x_grid(t: float, kp: KernelParams) -> np.ndarray:
    X = physical_window(t, kp)
    dx = math.pi / (8.0 * xi_cutoff(t, kp))
    half = int(math.ceil(X / dx))
    return np.arange(-half, half + 1) * dx


def projected_symbol(xi: np.ndarray, t: float, kp: KernelParams, projection: Projection) -> np.ndarray:
    """Samples of the chosen projection, components flattened on the last axis."""
    if projection == "full":
        return expA_closed(xi, t, kp).reshape(xi.size, 4)
    actions = symbol_actions(xi, t, kp)
    if projection == "M_right":
        return actions.SM
    if projection == "N_left":
        return actions.NS
    return actions.NSM[:, None]


def _xi_grid(t: float, kp: KernelParams, x_max: float) -> np.ndarray:
    cutoff = xi_cutoff(t, kp)
    dxi = math.pi / (4.0 * max(x_max, 1e-12))
    half = int(math.ceil(cutoff / dxi))
    if 2 * half + 1 > MAX_XI_POINTS:
        raise ConfigurationError(
            f"synthesis at t={t:.4g} needs {2 * half + 1} frequencies; shrink the x window or raise t"
        )
    return np.arange(-half, half + 1) * dxi


def synthesize_complex(
    t: float,
    kp: KernelParams,
    x_grid: np.ndarray,
    projection: Projection = "full",
    m: int = 0,
) -> np.ndarray:
    """(1/2pi) int S^(xi) (i xi)^m e^{i xi x} dxi by the trapezoid rule; shape (len(x), components)."""
    if t <= 0:
        raise ConfigurationError(f"kernel synthesis needs t > 0, got {t}")
    if m not in (0, 1, 2):
        raise ConfigurationError(f"derivative order must be 0, 1 or 2, got {m}")
    x = np.asarray(x_grid, dtype=float)
    if not np.allclose(x, -x[::-1], atol=1e-12 * max(1.0, float(np.max(np.abs(x))))):
        raise ConfigurationError("x grid must be symmetric about 0")
    xi = _xi_grid(t, kp, float(np.max(np.abs(x))))
    symbol = projected_symbol(xi, t, kp, projection) * ((1j * xi) ** m)[:, None]
    phases = np.exp(1j * np.outer(x, xi))
    weights = np.full(xi.size, xi[1] - xi[0])
    weights[0] = weights[-1] = 0.5 * weights[0]
    return phases @ (symbol * weights[:, None]) / (2.0 * math.pi)


def kernel_synthesize(
    t: float,
    kp: KernelParams,
    x_grid: np.ndarray,
    projection: Projection = "full",
    m: int = 0,
) -> np.ndarray:
    """Real part of the synthesized kernel: (n, 2, 2) for full, (n, 2) for M_right/N_left, (n,) for N_M."""
    values = synthesize_complex(t, kp, x_grid, projection, m).real
    if projection == "full":
        return values.reshape(-1, 2, 2)
    if projection == "N_M":
        return values[:, 0]
    return values


def synthesis_residue(t: float, kp: KernelParams, x_grid: np.ndarray, projection: Projection = "full", m: int = 0) -> float:
    """Largest imaginary part relative to the largest real part."""
    values = synthesize_complex(t, kp, x_grid, projection, m)
    scale = float(np.max(np.abs(values.real))) or 1.0
    return float(np.max(np.abs(values.imag))) / scale


def l1_norm(values: np.ndarray, x_grid: np.ndarray) -> float:
    """Sum over components of the integral of |component|."""
    flat = np.abs(values).reshape(len(x_grid), -1)
    return float(np.sum(trapezoid(flat, x_grid, axis=0)))


def envelope_shape(t, kp: KernelParams, projection: Projection, m: int) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    base = t ** (-0.5 * m)
    if projection == "full":
        return base
    fast = np.exp(-2.0 * kp.kappa * t)
    if projection == "N_M":
        return base * (fast + kp.nu**2 / t**2)
    return base * (fast + abs(kp.nu) / t)


def kernel_l1_decay(
    kp: KernelParams,
    m: int,
    t_list,
    projection: Projection,
    window: tuple[float, float] | None = None,
    faster_than_power_slope: float = -3.0,
) -> KernelDecay:
    """L1 norms of d^m/dx^m of a projection over t_list, the measured envelope constant and a power-law fit.

    Norms that underflow to zero are left out of the fit; with fewer than
    eight positive norms, or a slope steeper than faster_than_power_slope,
    the decay is flagged as faster than any tested power.
    """
    times = np.asarray(t_list, dtype=float)
    if times.size < 2 or times[-1] / times[0] < 100.0 * (1 - 1e-9):
        raise ConfigurationError("kernel decay needs times spanning at least two decades")
    norms = []
    for t in times:
        x = default_x_grid(float(t), kp)
        norms.append(l1_norm(kernel_synthesize(float(t), kp, x, projection, m), x))
    norms = np.array(norms)
    shape = envelope_shape(times, kp, projection, m)
    usable = shape > 0
    constant = float(np.max(norms[usable] / shape[usable])) if np.any(usable) else 0.0

    positive = norms > 0
    fit, faster = None, False
    window = window or (float(times[0]), float(times[-1]))
    try:
        fit = decay_fit(times[positive], norms[positive], window)
        faster = fit.slope < faster_than_power_slope
    except FitError as exc:
        logger.info("%s m=%d: %s; treating decay as faster than any power", projection, m, exc)
        faster = True
    return KernelDecay(
        projection=projection,
        m=m,
        times=times.tolist(),
        l1_norms=norms.tolist(),
        envelope=(constant * shape).tolist(),
        envelope_constant=constant,
        fit=fit,
        faster_than_power=faster,
    )


def interpolation_ratio(t: float, kp: KernelParams, projection: Projection = "full", m: int = 0) -> float:
    """||f||_1^2 / (||f^||_2 ||d f^/dxi||_2) for the kernel projection at time t."""
    x = default_x_grid(t, kp)
    f = kernel_synthesize(t, kp, x, projection, m)
    xi = _xi_grid(t, kp, float(np.max(np.abs(x))))
    f_hat = projected_symbol(xi, t, kp, projection) * ((1j * xi) ** m)[:, None]
    df_hat = np.gradient(f_hat, xi, axis=0)
    hat_l2 = math.sqrt(float(np.sum(trapezoid(np.abs(f_hat) ** 2, xi, axis=0))))
    dhat_l2 = math.sqrt(float(np.sum(trapezoid(np.abs(df_hat) ** 2, xi, axis=0))))
    if hat_l2 == 0.0 or dhat_l2 == 0.0:
        raise FitError("interpolation ratio undefined for a vanishing symbol")
    return l1_norm(f, x) ** 2 / (hat_l2 * dhat_l2)
