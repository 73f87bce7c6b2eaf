"""Tests for the named initial profiles."""

import math

import numpy as np
import pytest

from domain.grid import make_grid
from models.errors import ConfigurationError
from models.scenario import ProfileSpec
from pipeline.profiles import band_limited, profile, smooth_bump


class TestGaussianBump:
    def test_defaults(self):
        grid = make_grid(20.0, 200)
        s = profile(ProfileSpec(name="gaussian_bump"), grid)
        assert float(s.u.values.max()) == pytest.approx(2.0)
        assert np.all(s.v.values == 1.0)

    def test_unknown_option_rejected(self):
        with pytest.raises(ConfigurationError, match="widht"):
            profile(ProfileSpec(name="gaussian_bump", options={"widht": 1.0}), make_grid(20.0, 200))

    def test_negative_profile_rejected(self):
        spec = ProfileSpec(name="gaussian_bump", options={"u_base": -2.0})
        with pytest.raises(ConfigurationError):
            profile(spec, make_grid(20.0, 200))


    def test_periodic_images_meet_at_antipode(self):
        grid = make_grid(20.0, 200)
        b = smooth_bump(grid, 0.0, 2.0)
        assert b[0] == pytest.approx(1.0)
        assert b[100] == pytest.approx(2.0 * math.exp(-12.5), rel=1e-9)

    def test_neumann_mirror_image(self):
        grid = make_grid(5.0, 65, "neumann")
        b = smooth_bump(grid, 1.0, 0.5)
        assert b[0] == pytest.approx(2.0 * math.exp(-2.0) / (1.0 + math.exp(-8.0)), rel=1e-9)


class TestRiemann:
    def test_neumann_sides(self):
        grid = make_grid(100.0, 1001, "neumann")
        s = profile(ProfileSpec(name="riemann_smoothed"), grid)
        assert s.u.values[0] == pytest.approx(1.0)
        assert s.v.values[0] == pytest.approx(0.0, abs=1e-12)
        assert s.u.values[-1] == pytest.approx(0.0, abs=1e-12)
        assert s.v.values[-1] == pytest.approx(1.0)

    def test_periodic_indicator_of_left_half(self):
        grid = make_grid(100.0, 1000)
        s = profile(ProfileSpec(name="riemann_smoothed", options={"width": 1.0}), grid)
        assert s.u.values[250] == pytest.approx(1.0)
        assert s.u.values[750] == pytest.approx(0.0, abs=1e-12)


class TestRandomSmooth:
    def test_reproducible_and_positive(self):
        grid = make_grid(20.0, 128)
        first = profile(ProfileSpec(name="random_smooth"), grid, seed=4)
        second = profile(ProfileSpec(name="random_smooth"), grid, seed=4)
        assert np.array_equal(first.u.values, second.u.values)
        assert first.min_value() > 0.0

    def test_seed_option_overrides(self):
        grid = make_grid(20.0, 128)
        a = profile(ProfileSpec(name="random_smooth", options={"seed": 9}), grid, seed=1)
        b = profile(ProfileSpec(name="random_smooth", options={"seed": 9}), grid, seed=2)
        assert np.array_equal(a.v.values, b.v.values)

    def test_amplitude_limit(self):
        with pytest.raises(ConfigurationError):
            profile(ProfileSpec(name="random_smooth", options={"amplitude": 1.0}), make_grid(20.0, 128))

    @pytest.mark.parametrize("bc,points", [("periodic", 128), ("neumann", 129)])
    def test_band_limited_scale(self, bc, points):
        f = band_limited(make_grid(20.0, points, bc), np.random.default_rng(0), 8)
        assert float(np.max(np.abs(f))) == pytest.approx(1.0)


class TestOtherProfiles:
    def test_constant_pair(self):
        s = profile(ProfileSpec(name="constant_pair", options={"u": 0.25, "v": 0.5}), make_grid(10.0, 32))
        assert np.all(s.u.values == 0.25)
        assert np.all(s.v.values == 0.5)

    def test_fisher_pulse_leaves_positive_cone(self):
        s = profile(ProfileSpec(name="fisher_pulse"), make_grid(40.0, 256))
        assert s.min_value() < 0.0
