"""Tests for the dissipative structures, their pointwise inequalities, balances and decay fits."""

import math

import numpy as np
import pytest

from domain.grid import make_grid
from dynamics.imex import simulate_rd
from models.errors import ConfigurationError, DomainError, FitError, StructureParameterError
from models.state import Params, State
from models.scenario import ProfileSpec
from models.structure import StructureParams
from pipeline.profiles import profile
from structures.balance import (
    balance_residual,
    instantaneous_balance_residual,
    refinement_order,
    rho_residual,
    slaving_ansatz,
)
from structures.calibration import default_structure_params, gamma_calibrate, gamma_max, theta_calibrate
from structures.checks import (
    dpos_check,
    flux_bound_check,
    flux_constant,
    flux_ratio_sup,
    ordering_check,
    ordering_constant,
    positivity_check,
    rdnm_signs_check,
)
from structures.decay import decay_fit, equilibrium_distance, log_linear_fit, ul_decay_series
from structures.jets import jet_from_state, random_jets
from structures.localized import (
    gronwall_checks,
    gronwall_constants,
    localized_energies,
    measured_constants,
    random_pairs,
)
from structures.triples import check_alphabet, eds, eds_boltzmann, eds_primary, eds_secondary, eds_theta

A2B = Params(a=1.0, b=2.0, k=1.0)


def _constant(grid, u, v) -> State:
    return State.from_arrays(grid, np.full(grid.points, u), np.full(grid.points, v))


def _wavy(points: int, length: float = 20.0) -> State:
    grid = make_grid(length, points)
    phase = 2 * math.pi * grid.x / length
    return State.from_arrays(grid, 1.0 + 0.5 * np.sin(phase), 0.8 + 0.4 * np.cos(2 * phase))


def _wavy_states() -> list[State]:
    grid = make_grid(20.0, 128)
    rng = np.random.default_rng(3)
    states = []
    for _ in range(6):
        phases = rng.uniform(0, 2 * math.pi, 4)
        x = 2 * math.pi * grid.x / 20.0
        u = 1.0 + 0.9 * np.sin(x + phases[0]) * np.cos(2 * x + phases[1])
        v = 0.5 + 0.45 * np.sin(3 * x + phases[2]) + 0.05 * np.cos(x + phases[3])
        states.append(State.from_arrays(grid, u, v))
    return states


class TestPrimaryStructure:
    def test_equilibrium_values(self):
        grid = make_grid(10.0, 32)
        v_bar = 0.6
        field = eds_primary(_constant(grid, v_bar**2, v_bar), A2B)
        assert field.e.values[0] == pytest.approx(0.5 * v_bar**4 + v_bar**3 / 6.0)
        assert np.all(field.f.values == 0.0)
        assert np.max(np.abs(field.d.values)) < 1e-15

    def test_signs_on_nonnegative_states(self):
        assert positivity_check(_wavy_states(), A2B).passed

    def test_flux_bound(self):
        assert flux_constant(A2B) == pytest.approx(3.0)
        assert flux_bound_check(_wavy_states(), A2B).passed


class TestSecondStructure:
    def test_default_parameters(self):
        sp = default_structure_params(A2B)
        assert sp.alpha == pytest.approx(3.0)
        assert sp.beta == pytest.approx(4.0)
        assert 0.0 < sp.gamma < gamma_max(A2B, sp.alpha, sp.beta)

    def test_gamma_safety_factor(self):
        assert gamma_calibrate(A2B, 3.0, 4.0) == pytest.approx(0.9 * gamma_max(A2B, 3.0, 4.0))

    def test_young_conditions_rejected(self):
        with pytest.raises(StructureParameterError):
            check_alphabet(A2B, StructureParams(alpha=0.01, beta=4.0))

    def test_secondary_needs_parameters(self):
        grid = make_grid(10.0, 32)
        with pytest.raises(ConfigurationError):
            eds(_constant(grid, 1.0, 1.0), A2B, "secondary")

    def test_ordering_constant(self):
        sp = default_structure_params(A2B)
        assert ordering_constant(A2B, sp) == pytest.approx(max(1.0, (A2B.a + A2B.b) / (2 * A2B.a)))
        assert ordering_check(_wavy_states(), A2B, sp).passed

    def test_dissipation_lower_bound(self):
        sp = default_structure_params(A2B)
        report = dpos_check(_wavy_states(), A2B, sp)
        assert report.passed
        assert report.detail["gamma"] == pytest.approx(sp.gamma)

    def test_equilibrium_has_no_second_density(self):
        grid = make_grid(10.0, 32)
        field = eds_secondary(_constant(grid, 0.25, 0.5), A2B, default_structure_params(A2B))
        assert np.max(np.abs(field.e.values)) < 1e-15


class TestThetaStructures:
    def test_theta_zero_reduces_to_primary(self):
        s = _wavy(64)
        sp = default_structure_params(A2B)
        first, second = eds_theta(s, A2B, sp)
        assert np.allclose(first.e.values, eds_primary(s, A2B).e.values)
        assert np.allclose(second.d.values, eds_secondary(s, A2B, sp).d.values)

    def test_calibrated_theta(self):
        sp, c = theta_calibrate(A2B, default_structure_params(A2B), probe_states=1024, seed=1)
        assert 0.0 < sp.theta <= 0.5
        assert c > 0.0

    def test_calibrated_theta_accepted_on_smooth_state(self):
        sp, _ = theta_calibrate(A2B, default_structure_params(A2B), probe_states=1024, seed=1)
        eds_theta(_wavy(64), A2B, sp, c=0.0)


class TestBoltzmann:
    def test_dissipation_example(self):
        grid = make_grid(10.0, 32)
        field = eds_boltzmann(_constant(grid, 1.0, 2.0), A2B)
        assert field.d.values[0] == pytest.approx(A2B.k * math.log(4.0) * 3.0)
        assert field.e.values[0] == pytest.approx(2 * math.log(2.0) - 1.0)

    def test_zero_concentrations_floored(self):
        grid = make_grid(10.0, 32)
        field = eds_boltzmann(_constant(grid, 0.0, 1.0), A2B)
        assert field.floored_points == 32
        assert np.all(np.isfinite(field.d.values))

    def test_negative_concentration_rejected(self):
        grid = make_grid(10.0, 32)
        with pytest.raises(DomainError):
            eds_boltzmann(_constant(grid, -1.0, 1.0), A2B)

    def test_flux_ratio_finite(self):
        assert math.isfinite(flux_ratio_sup(_wavy_states(), A2B, "boltzmann"))

    def test_unknown_ratio_kind(self):
        with pytest.raises(ConfigurationError):
            flux_ratio_sup(_wavy_states(), A2B, "primary")


class TestRdnmStructure:
    def test_signs(self):
        p = Params(a=1.0, b=2.0, n_st=2, m_st=1)
        assert rdnm_signs_check(_wavy_states(), p).passed

    def test_balanced_constant_has_no_dissipation(self):
        p = Params(a=1.0, b=2.0, n_st=2, m_st=1)
        grid = make_grid(10.0, 32)
        field = eds(_constant(grid, 1.0, 1.0), p, "rdnm")
        assert np.all(field.d.values == 0.0)


class TestBalance:
    def test_refinement_order(self):
        assert refinement_order(4.0, 1.0) == pytest.approx(2.0)
        with pytest.raises(FitError):
            refinement_order(0.0, 1.0)

    @pytest.mark.parametrize("kind", ["primary", "secondary"])
    def test_stencil_consistency_is_second_order(self, kind):
        sp = default_structure_params(A2B)
        coarse = instantaneous_balance_residual(_wavy(64), A2B, kind, sp)
        fine = instantaneous_balance_residual(_wavy(128), A2B, kind, sp)
        assert refinement_order(coarse, fine) == pytest.approx(2.0, abs=0.3)

    @pytest.mark.parametrize("kind", ["primary", "secondary", "theta_first", "theta_second"])
    def test_bump_space_order_holds_over_two_refinements(self, kind):
        sp = default_structure_params(A2B)
        if kind.startswith("theta"):
            sp, _ = theta_calibrate(A2B, sp, probe_states=1024, seed=1)
        bump = ProfileSpec(name="gaussian_bump", options={"u_amplitude": 1.0, "v_amplitude": 0.5, "width": 2.0})
        residuals = [
            instantaneous_balance_residual(profile(bump, make_grid(20.0, n)), A2B, kind, sp) for n in (256, 512, 1024)
        ]
        assert refinement_order(residuals[0], residuals[1]) == pytest.approx(2.0, abs=0.3)
        assert refinement_order(residuals[1], residuals[2]) == pytest.approx(2.0, abs=0.3)

    def test_needs_uniform_snapshots(self):
        traj = simulate_rd(_wavy(64), A2B, 1.0, [0.1, 0.3])
        with pytest.raises(ConfigurationError):
            balance_residual(traj, "primary")

    def test_rho_identity_on_equilibrium(self):
        grid = make_grid(10.0, 32)
        traj = simulate_rd(_constant(grid, 0.25, 0.5), A2B, 1.0, [0.5, 1.0])
        assert rho_residual(traj).norm < 1e-12

    def test_slaving_ansatz_vanishes_on_constants(self):
        grid = make_grid(10.0, 32)
        assert np.all(slaving_ansatz(_constant(grid, 1.0, 1.0), A2B) == 0.0)


class TestDecayFit:
    def test_exact_power_law(self):
        t = np.geomspace(1.0, 100.0, 20)
        fit = decay_fit(t, 3.0 * t**-0.5, (1.0, 100.0))
        assert fit.slope == pytest.approx(-0.5)
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.envelope(np.array([4.0]))[0] == pytest.approx(1.5)

    def test_log_correction(self):
        t = np.geomspace(1.0, 100.0, 20)
        fit = decay_fit(t, np.log(2.0 + t) / t, (1.0, 100.0), log_correction=True)
        assert fit.slope == pytest.approx(-1.0)

    def test_window_selects_samples(self):
        t = np.geomspace(1.0, 100.0, 20)
        fit = decay_fit(t, t**-1.0, (10.0, 100.0), min_samples=4)
        assert fit.samples < 20

    def test_too_few_samples(self):
        with pytest.raises(FitError):
            decay_fit([1.0, 2.0, 3.0], [1.0, 0.5, 0.3], (1.0, 3.0))

    def test_nonpositive_values(self):
        t = np.geomspace(1.0, 100.0, 20)
        with pytest.raises(FitError):
            decay_fit(t, np.zeros(20), (1.0, 100.0))

    def test_log_linear_rate(self):
        t = np.linspace(0.0, 5.0, 20)
        rate, r2 = log_linear_fit(t, np.exp(-2.0 * t))
        assert rate == pytest.approx(2.0)
        assert r2 == pytest.approx(1.0)


class TestDecaySeries:
    def test_equilibrium_distance_zero_at_equilibrium(self):
        grid = make_grid(10.0, 64)
        assert equilibrium_distance(_constant(grid, 0.49, 0.7), 5.0, 2.0) < 1e-8

    def test_equilibrium_distance_of_pure_a(self):
        grid = make_grid(10.0, 64)
        assert equilibrium_distance(_constant(grid, 1.0, 0.0), 5.0, 2.0) == pytest.approx(1.0)

    def test_ul_series_skips_initial_time(self):
        traj = simulate_rd(_wavy(64), A2B, 1.0, [0.5])
        times, values = ul_decay_series(traj)
        assert list(times) == [0.5, 1.0]
        assert np.all(values > 0)


class TestJets:
    def test_random_jets_quarter_without_v(self):
        jets = random_jets(400, seed=0)
        assert np.all(jets.v[:100] == 0.0)
        assert np.all(jets.u >= 0.0)

    def test_jets_reproducible(self):
        assert np.array_equal(random_jets(16, 5).uxx, random_jets(16, 5).uxx)

    def test_state_jet(self):
        j = jet_from_state(_wavy(64))
        assert np.allclose(j.w, 2 * j.u + j.v)
        assert np.allclose(j.rho, j.u - j.v**2)


class TestLocalized:
    @pytest.fixture
    def run(self):
        grid = make_grid(40.0, 256)
        x = grid.x
        s = State.from_arrays(grid, 1.0 + np.exp(-((x - 20.0) ** 2) / 4.0), 0.5 + 0.5 * np.exp(-((x - 15.0) ** 2)))
        return simulate_rd(s, A2B, 2.0, np.linspace(0.05, 2.0, 40))

    def test_energy_inequalities(self, run):
        sp = default_structure_params(A2B)
        series = localized_energies(run, A2B, sp, 2.0, 20.0)
        assert series.eps == pytest.approx(1.0 / math.sqrt(3.0 * 2.0))
        report = gronwall_checks(series, measured_constants(run, A2B, sp))
        assert report.energy_slack > 0.0
        assert report.passed

    def test_riemann_pairs_with_dense_head(self):
        grid = make_grid(256.0, 1024)
        spec = ProfileSpec(
            name="riemann_smoothed",
            options={"width": 5.0, "u_left": 1.0, "v_left": 1.0, "u_right": 0.0, "v_right": 0.0},
        )
        times = np.concatenate([np.linspace(0.0, 2.0, 401)[1:], np.arange(3.0, 21.0)])
        run = simulate_rd(profile(spec, grid), A2B, 20.0, times)
        sp = default_structure_params(A2B)
        constants = measured_constants(run, A2B, sp)
        reports = [
            gronwall_checks(localized_energies(run, A2B, sp, T, x0), constants)
            for x0 in (0.0, 64.0, 128.0, 192.0)
            for T in (10.0, 20.0)
        ]
        assert all(r.passed for r in reports), [(r.x0, r.T) for r in reports if not r.passed]
        assert min(r.energy_slack for r in reports) > 0.0

    def test_observation_time_must_be_a_snapshot(self, run):
        with pytest.raises(ConfigurationError):
            localized_energies(run, A2B, default_structure_params(A2B), 1.234, 20.0)

    def test_constants_need_gamma(self):
        with pytest.raises(ConfigurationError):
            gronwall_constants(A2B, StructureParams(alpha=3.0, beta=4.0), 1.0, 2.0)

    def test_random_pairs(self, run):
        pairs = random_pairs(run, 5, 1.0, None, seed=2)
        assert pairs == random_pairs(run, 5, 1.0, None, seed=2)
        assert all(T >= 1.0 and 0.0 <= x0 < 40.0 for x0, T in pairs)

    def test_random_pairs_without_eligible_time(self, run):
        with pytest.raises(ConfigurationError):
            random_pairs(run, 5, 10.0, None, seed=2)
