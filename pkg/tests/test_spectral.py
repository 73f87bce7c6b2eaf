"""Tests for the linearized symbol, its closed-form exponential and kernel synthesis."""

import math

import numpy as np
import pytest
from scipy.integrate import trapezoid
from scipy.linalg import expm

from models.errors import ConfigurationError
from models.kernel import KernelParams
from spectral.kernel import (
    default_x_grid,
    interpolation_ratio,
    kernel_l1_decay,
    kernel_synthesize,
    l1_norm,
    synthesis_residue,
)
from spectral.symbol import delta, eigenvalues, expA_closed, matrix_A, symbol_actions

UNEQUAL = KernelParams(a=1.0, b=2.0, k=1.0, v_bar=1.0)
EQUAL = KernelParams(a=1.0, b=1.0, k=1.0, v_bar=1.0)
LATE_TIMES = np.geomspace(10.0, 1000.0, 12)


class TestSymbol:
    def test_kernel_vector_at_zero_frequency(self):
        assert np.allclose(matrix_A(0.0, UNEQUAL) @ np.ones(2), 0.0)

    def test_equal_diffusion_delta_is_kappa(self):
        xi = np.linspace(0.0, 10.0, 11)
        assert np.allclose(delta(xi, EQUAL), EQUAL.kappa)

    def test_eigenvalues(self):
        slow, fast = eigenvalues(np.array([0.0, 1.0]), UNEQUAL)
        assert slow[0] == 0.0
        assert slow[1] < 0.0
        assert fast[0] == pytest.approx(-2.0 * UNEQUAL.kappa)

    def test_identity_at_time_zero(self):
        assert np.allclose(expA_closed(np.array([0.0, 2.0]), 0.0, UNEQUAL), np.eye(2))

    def test_matches_matrix_exponential(self):
        rng = np.random.default_rng(11)
        for xi, t in zip(rng.uniform(0.0, 3.0, 200), rng.uniform(0.0, 5.0, 200)):
            reference = expm(t * matrix_A(xi, UNEQUAL))
            closed = expA_closed(xi, t, UNEQUAL)
            assert np.max(np.abs(closed - reference)) <= 1e-10 * np.max(np.abs(reference))

    def test_semigroup(self):
        xi = np.array([0.3, 1.7])
        product = expA_closed(xi, 1.5, UNEQUAL) @ expA_closed(xi, 2.5, UNEQUAL)
        assert np.allclose(product, expA_closed(xi, 4.0, UNEQUAL), rtol=1e-12, atol=1e-14)

    def test_large_time_stays_finite(self):
        values = expA_closed(np.array([0.0, 1e-4, 10.0]), 1e6, UNEQUAL)
        assert np.all(np.isfinite(values))
        assert values[0] @ np.ones(2) == pytest.approx(np.ones(2))


class TestSymbolActions:
    def test_match_matrix_products(self):
        xi = np.array([0.0, 0.2, 1.0, 4.0])
        S = expA_closed(xi, 2.0, UNEQUAL)
        actions = symbol_actions(xi, 2.0, UNEQUAL)
        assert np.allclose(actions.SM, S @ UNEQUAL.M, atol=1e-13)
        assert np.allclose(actions.NS, UNEQUAL.N @ S, atol=1e-13)
        assert np.allclose(actions.NSM, UNEQUAL.N @ S @ UNEQUAL.M, atol=1e-13)

    def test_zero_frequency_reaction_mode(self):
        t = 0.7
        nsm = symbol_actions(np.array([0.0]), t, UNEQUAL).NSM[0]
        assert nsm == pytest.approx(-2.0 * UNEQUAL.kappa * math.exp(-2.0 * UNEQUAL.kappa * t))

    def test_equal_diffusion_keeps_reaction_direction(self):
        actions = symbol_actions(np.linspace(0.0, 5.0, 21), 1.0, EQUAL)
        M = EQUAL.M
        cross = actions.SM[:, 0] * M[1] - actions.SM[:, 1] * M[0]
        assert np.max(np.abs(cross)) <= 1e-12 * np.max(np.abs(actions.SM))


class TestSynthesis:
    def test_mass_equals_zero_frequency_symbol(self):
        x = default_x_grid(1.0, UNEQUAL)
        kernel = kernel_synthesize(1.0, UNEQUAL, x)
        mass = trapezoid(kernel, x, axis=0)
        assert np.allclose(mass, expA_closed(0.0, 1.0, UNEQUAL), atol=1e-8)

    def test_real_kernel(self):
        x = default_x_grid(2.0, UNEQUAL)
        assert synthesis_residue(2.0, UNEQUAL, x) <= 1e-10

    def test_even_kernel(self):
        x = default_x_grid(2.0, UNEQUAL)
        kernel = kernel_synthesize(2.0, UNEQUAL, x)
        assert np.allclose(kernel, kernel[::-1], atol=1e-10)

    def test_decoupled_limit_is_heat_kernel(self):
        kp = KernelParams(a=1.0, b=2.0, k=1e-8, v_bar=1.0)
        x = default_x_grid(1.0, kp)
        kernel = kernel_synthesize(1.0, kp, x)
        for i, diffusivity in enumerate((kp.a, kp.b)):
            heat = np.exp(-(x**2) / (4 * diffusivity)) / math.sqrt(4 * math.pi * diffusivity)
            assert np.max(np.abs(kernel[:, i, i] - heat)) < 1e-6

    def test_projection_shapes(self):
        x = default_x_grid(1.0, UNEQUAL)
        assert kernel_synthesize(1.0, UNEQUAL, x, "M_right").shape == (x.size, 2)
        assert kernel_synthesize(1.0, UNEQUAL, x, "N_M").shape == (x.size,)

    def test_invalid_requests(self):
        x = default_x_grid(1.0, UNEQUAL)
        with pytest.raises(ConfigurationError):
            kernel_synthesize(0.0, UNEQUAL, x)
        with pytest.raises(ConfigurationError):
            kernel_synthesize(1.0, UNEQUAL, x, m=3)
        with pytest.raises(ConfigurationError):
            kernel_synthesize(1.0, UNEQUAL, x + 0.5)

    def test_interpolation_ratio_finite(self):
        ratio = interpolation_ratio(5.0, UNEQUAL, "M_right")
        assert 0.0 < ratio < math.inf

    def test_l1_norm_of_heat_kernel(self):
        x = np.linspace(-30.0, 30.0, 6001)
        heat = np.exp(-(x**2) / 4.0) / math.sqrt(4 * math.pi)
        assert l1_norm(heat, x) == pytest.approx(1.0, rel=1e-8)


class TestKernelDecay:
    @pytest.mark.parametrize(
        "projection,m,slope,tolerance",
        [
            ("M_right", 0, -1.0, 0.15),
            ("N_left", 0, -1.0, 0.15),
            ("N_M", 0, -2.0, 0.2),
            ("full", 1, -0.5, 0.1),
        ],
    )
    def test_late_time_slopes(self, projection, m, slope, tolerance):
        decay = kernel_l1_decay(UNEQUAL, m, LATE_TIMES, projection)
        assert decay.fit is not None
        assert decay.fit.slope == pytest.approx(slope, abs=tolerance)
        assert not decay.faster_than_power

    def test_equal_diffusion_projection_beats_powers(self):
        decay = kernel_l1_decay(EQUAL, 0, LATE_TIMES, "M_right")
        assert decay.faster_than_power

    def test_envelope_dominates_norms(self):
        decay = kernel_l1_decay(UNEQUAL, 0, LATE_TIMES, "N_M")
        assert all(n <= e * (1 + 1e-12) for n, e in zip(decay.l1_norms, decay.envelope))

    def test_needs_two_decades(self):
        with pytest.raises(ConfigurationError):
            kernel_l1_decay(UNEQUAL, 0, [1.0, 10.0], "full")
