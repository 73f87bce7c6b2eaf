"""Tests for the acceptance rules."""

import math

import pytest

from models.report import AcceptanceItem
from models.state import EnvelopeReport
from models.structure import DecayFit, GronwallReport, MarginReport
from rules.acceptance import (
    all_passed,
    check_at_least,
    check_at_most,
    check_close,
    check_envelope,
    check_gronwall,
    check_margin,
    check_slope,
)


def _fit(slope: float) -> DecayFit:
    return DecayFit(slope=slope, intercept=0.0, window=(10.0, 100.0), r_squared=0.999, samples=20)


def _gronwall(passed: bool, slack: float) -> GronwallReport:
    return GronwallReport(
        T=10.0,
        x0=5.0,
        energy_lhs=1.0,
        energy_rhs=1.0 + slack,
        energy_slack=slack,
        second_lhs=1.0,
        second_rhs=2.0,
        second_slack=1.0,
        initial_bound_slack=10.0,
        passed=passed,
        tolerance=1e-10,
    )


class TestCheckSlope:
    def test_sharp_within_tolerance(self):
        item = check_slope("slope_u_x", _fit(-0.55), -0.5, 0.1)
        assert item.passed
        assert item.value == pytest.approx(-0.55)
        assert item.target == "-0.5 +/- 0.1"

    def test_sharp_too_fast_fails(self):
        assert not check_slope("slope_u_x", _fit(-0.8), -0.5, 0.1).passed

    def test_bound_accepts_faster_decay(self):
        item = check_slope("slope_u_x", _fit(-0.8), -0.5, 0.1, sharp=False)
        assert item.passed
        assert item.target == "<= -0.4"

    def test_missing_fit_fails(self):
        item = check_slope("slope_u_x", None, -0.5, 0.1)
        assert not item.passed
        assert item.detail == "no fit available"

    def test_trivial_series_passes(self):
        item = check_slope("slope_rho", None, -1.0, 0.15, trivial=True)
        assert item.passed
        assert item.detail == "series identically zero"


class TestMarginChecks:
    def test_margin(self):
        report = MarginReport(name="flux_bound", min_margin=-1e-12, tolerance=1e-10, passed=True, worst_t=1.0, worst_x=2.0)
        item = check_margin(report)
        assert item.passed
        assert item.name == "flux_bound"
        assert "t=1" in item.detail

    def test_envelope(self):
        report = EnvelopeReport(
            upper_margin=0.1,
            lower_margin=-0.2,
            lower_bound_margin=0.0,
            oracle_deviation=1e-3,
            tolerance=1e-8,
            passed=False,
        )
        item = check_envelope(report)
        assert not item.passed
        assert item.value == pytest.approx(-0.2)

    def test_envelope_report_fields(self):
        assert set(EnvelopeReport.model_fields) == {
            "upper_margin",
            "lower_margin",
            "lower_bound_margin",
            "oracle_deviation",
            "tolerance",
            "passed",
        }


class TestScalarChecks:
    def test_at_most(self):
        assert check_at_most("mass_conservation", 1e-12, 1e-8).passed
        assert not check_at_most("mass_conservation", 1e-6, 1e-8).passed

    def test_nan_never_passes(self):
        assert not check_at_most("x", math.nan, 1.0).passed
        assert not check_at_least("x", math.nan, 0.0).passed
        assert not check_close("x", math.nan, 0.0, 1.0).passed

    def test_at_least(self):
        assert check_at_least("tail_log_linear_r2", 0.995, 0.99).passed

    def test_close(self):
        item = check_close("space_order", 2.1, 2.0, 0.3)
        assert item.passed
        assert item.target == "2 +/- 0.3"


class TestGronwall:
    def test_counts_passing_pairs(self):
        reports = [_gronwall(True, 0.5), _gronwall(True, 0.1), _gronwall(False, -1.0)]
        item = check_gronwall(reports, required=2)
        assert item.passed
        assert item.value == 2.0
        assert "-1.000e+00" in item.detail

    def test_too_few_pairs(self):
        assert not check_gronwall([_gronwall(False, -1.0)], required=1).passed


class TestAllPassed:
    def test_empty_is_not_a_pass(self):
        assert not all_passed([])

    def test_any_failure(self):
        items = [
            AcceptanceItem(name="a", passed=True, tolerance=0.0),
            AcceptanceItem(name="b", passed=False, tolerance=0.0),
        ]
        assert not all_passed(items)
        assert all_passed(items[:1])
