"""Fourier symbol of the system linearized at (v_bar^2, v_bar) and its exponential.

A(xi) = -diag(a, b) xi^2 + M N^T = -(kappa + mu xi^2) I + B(xi) with
B = [[-ell - nu xi^2, k1], [k2, ell + nu xi^2]] and B^2 = Delta^2 I, so

    exp(t A) = e^{-g t} (cosh(Delta t) I + sinh(Delta t)/Delta B),   g = kappa + mu xi^2.

Everything is evaluated through E_pm = exp(-(g +- Delta) t), with g - Delta
written without cancellation, so large t never overflows or loses digits.
"""

import numpy as np

from models.kernel import KernelParams, SpectralKernel, SymbolActions

SERIES_THRESHOLD = 1e-6


def matrix_A(xi, kp: KernelParams) -> np.ndarray:
    xi2 = np.asarray(xi, dtype=float) ** 2
    out = np.empty(xi2.shape + (2, 2))
    out[..., 0, 0] = -kp.k1 - kp.a * xi2
    out[..., 0, 1] = kp.k1
    out[..., 1, 0] = kp.k2
    out[..., 1, 1] = -kp.k2 - kp.b * xi2
    return out


def delta(xi, kp: KernelParams) -> np.ndarray:
    """Delta = sqrt(k1 k2 + (ell + nu xi^2)^2), equal to sqrt(kappa^2 + 2 ell nu xi^2 + nu^2 xi^4)."""
    xi2 = np.asarray(xi, dtype=float) ** 2
    return np.sqrt(kp.k1 * kp.k2 + (kp.ell + kp.nu * xi2) ** 2)


def _rates(xi, kp: KernelParams) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(xi^2, g, Delta, g - Delta) with g - Delta = xi^2 (k1 b + k2 a + a b xi^2)/(g + Delta)."""
    xi2 = np.asarray(xi, dtype=float) ** 2
    g = kp.kappa + kp.mu * xi2
    d = delta(xi, kp)
    slow = xi2 * (kp.k1 * kp.b + kp.k2 * kp.a + kp.a * kp.b * xi2) / (g + d)
    return xi2, g, d, slow


def eigenvalues(xi, kp: KernelParams) -> tuple[np.ndarray, np.ndarray]:
    """lambda_+ = -(g - Delta) <= 0 and lambda_- = -(g + Delta)."""
    _, g, d, slow = _rates(xi, kp)
    return -slow, -(g + d)


def _parts(xi, t: float, kp: KernelParams):
    """xi^2, Delta, E_plus, S_h = e^{-gt} sinh(Delta t), S_h / Delta."""
    xi2, g, d, slow = _rates(xi, kp)
    e_minus = np.exp(-slow * t)
    e_plus = np.exp(-(g + d) * t)
    s_h = 0.5 * (e_minus - e_plus)
    z = d * t
    small = z < SERIES_THRESHOLD
    # sinh(z)/z = 1 + z^2/6 + ... on the removable singularity
    s_over = np.where(
        small,
        np.exp(-g * t) * t * (1.0 + z * z / 6.0),
        s_h / np.where(small, 1.0, d),
    )
    return xi2, d, e_plus, s_h, s_over, e_minus


def expA_closed(xi, t: float, kp: KernelParams) -> np.ndarray:
    xi2, d, e_plus, s_h, s_over, e_minus = _parts(xi, t, kp)
    cosh_part = 0.5 * (e_minus + e_plus)
    shift = kp.ell + kp.nu * xi2
    out = np.empty(np.shape(xi2) + (2, 2))
    out[..., 0, 0] = cosh_part - s_over * shift
    out[..., 0, 1] = s_over * kp.k1
    out[..., 1, 0] = s_over * kp.k2
    out[..., 1, 1] = cosh_part + s_over * shift
    return out


def _one_minus_kappa_over_delta(xi2: np.ndarray, d: np.ndarray, kp: KernelParams) -> np.ndarray:
    """1 - kappa/Delta = nu xi^2 (2 ell + nu xi^2) / (Delta (Delta + kappa))."""
    return kp.nu * xi2 * (2.0 * kp.ell + kp.nu * xi2) / (d * (d + kp.kappa))


def symbol_actions(xi, t: float, kp: KernelParams) -> SymbolActions:
    """S^ M, N^T S^ and N^T S^ M from B M = -kappa M - nu xi^2 (k1, k2) and N^T B = -kappa N^T + nu xi^2 (1, 1)."""
    xi2, d, e_plus, s_h, s_over, _ = _parts(xi, t, kp)
    along = e_plus + _one_minus_kappa_over_delta(xi2, d, kp) * s_h
    M, N = kp.M, kp.N
    shear = kp.nu * xi2 * s_over
    SM = along[..., None] * M - shear[..., None] * np.array([kp.k1, kp.k2])
    NS = along[..., None] * N + shear[..., None] * np.array([1.0, 1.0])
    q = (
        kp.nu**2 * xi2**2
        * (kp.kappa * d + kp.k1 * kp.k2 - kp.ell * (kp.ell + kp.nu * xi2))
        / (d * (d + kp.kappa) ** 2)
    )
    NSM = -2.0 * (kp.kappa * e_plus + q * s_h)
    return SymbolActions(SM=SM, NS=NS, NSM=NSM)


def symbol_grid(xi_grid, t: float, kp: KernelParams) -> SpectralKernel:
    xi = np.asarray(xi_grid, dtype=float)
    return SpectralKernel(params=kp, t=t, xi_grid=xi, matrices=expA_closed(xi, t, kp))
