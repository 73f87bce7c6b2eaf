"""Tests for the pydantic models: validation and derived values."""

import numpy as np
import pytest
from pydantic import ValidationError

from domain.grid import make_grid
from models.grid import Field
from models.scenario import FitWindow, GronwallOptions, OutputSpec, ScenarioConfig
from models.state import Params, State, Trajectory
from models.structure import DecayFit


class TestParams:
    def test_default_stoichiometry(self):
        assert Params(a=1.0, b=2.0).stoichiometry == (1, 2)

    def test_stoichiometry_given_together(self):
        with pytest.raises(ValidationError):
            Params(a=1.0, b=1.0, n_st=2)

    def test_trivial_reaction_rejected(self):
        with pytest.raises(ValidationError):
            Params(a=1.0, b=1.0, n_st=1, m_st=1)

    def test_positive_diffusivity(self):
        with pytest.raises(ValidationError):
            Params(a=0.0, b=1.0)


class TestFields:
    def test_frozen_values(self):
        f = Field(grid=make_grid(1.0, 16), values=np.zeros(16))
        with pytest.raises(ValueError):
            f.values[0] = 1.0

    def test_shape_mismatch(self):
        with pytest.raises(ValidationError):
            Field(grid=make_grid(1.0, 16), values=np.zeros(17))

    def test_non_finite(self):
        values = np.zeros(16)
        values[3] = np.nan
        with pytest.raises(ValidationError):
            Field(grid=make_grid(1.0, 16), values=values)


class TestTrajectory:
    def test_times_must_increase(self):
        grid = make_grid(1.0, 16)
        s = State.from_arrays(grid, np.ones(16), np.ones(16), 1.0)
        with pytest.raises(ValidationError):
            Trajectory(snapshots=(s, s), params=Params(a=1.0, b=1.0), dt=0.1)

    def test_at_and_covers(self):
        grid = make_grid(1.0, 16)
        snaps = tuple(State.from_arrays(grid, np.ones(16), np.ones(16), t) for t in (0.0, 0.5, 1.0))
        traj = Trajectory(snapshots=snaps, params=Params(a=1.0, b=1.0), dt=0.1)
        assert traj.at(0.5).t == 0.5
        assert traj.covers(0.2, 1.0)
        assert not traj.covers(0.2, 1.5)
        with pytest.raises(KeyError):
            traj.at(0.7)


class TestScenarioModels:
    def test_log_output_times(self):
        times = OutputSpec(spacing="log", start=1.0, stop=100.0, count=3).times()
        assert times == pytest.approx([1.0, 10.0, 100.0])

    def test_linear_head(self):
        spec = OutputSpec(spacing="log", start=10.0, stop=100.0, count=2, head_until=1.0, head_count=2)
        assert spec.times() == pytest.approx([0.5, 1.0, 10.0, 100.0])

    def test_fit_window_order(self):
        with pytest.raises(ValidationError):
            FitWindow(t_lo=10.0, t_hi=1.0)

    def test_decay_fit_window(self):
        with pytest.raises(ValidationError):
            DecayFit(slope=-1.0, intercept=0.0, window=(5.0, 5.0), r_squared=1.0)

    def test_unknown_scenario(self, kernel_config):
        with pytest.raises(ValidationError):
            ScenarioConfig.model_validate({**kernel_config.model_dump(), "scenario": "heat_equation"})

    def test_config_is_frozen(self, kernel_config):
        with pytest.raises(ValidationError):
            kernel_config.seed = 3

    def test_gronwall_early_times(self):
        times = GronwallOptions().early_times()
        assert times.size == 400
        assert times[0] == pytest.approx(0.005)
        assert times[-1] == pytest.approx(2.0)
        assert GronwallOptions(early_count=0).early_times().size == 0

    def test_runtime_budget_positive(self, kernel_config):
        with pytest.raises(ValidationError):
            ScenarioConfig.model_validate({**kernel_config.model_dump(), "runtime_budget_s": 0.0})
