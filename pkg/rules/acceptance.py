"""Deterministic acceptance rules. Each turns a measured value into a pass/fail item citing its tolerance."""

import math

from models.report import AcceptanceItem
from models.state import EnvelopeReport
from models.structure import DecayFit, GronwallReport, MarginReport


def check_slope(
    name: str,
    fit: DecayFit | None,
    target: float,
    tolerance: float,
    sharp: bool = True,
    trivial: bool = False,
) -> AcceptanceItem:
    """Fitted slope within target +/- tolerance; with sharp=False only a decay at least as fast is required."""
    if trivial:
        return AcceptanceItem(
            name=name,
            passed=True,
            value=0.0,
            target=f"{target:g} +/- {tolerance:g}",
            tolerance=tolerance,
            detail="series identically zero",
        )
    if fit is None:
        return AcceptanceItem(
            name=name,
            passed=False,
            target=f"{target:g} +/- {tolerance:g}",
            tolerance=tolerance,
            detail="no fit available",
        )
    if sharp:
        passed = abs(fit.slope - target) <= tolerance
        wanted = f"{target:g} +/- {tolerance:g}"
    else:
        passed = fit.slope <= target + tolerance
        wanted = f"<= {target + tolerance:g}"
    return AcceptanceItem(
        name=name,
        passed=passed,
        value=fit.slope,
        target=wanted,
        tolerance=tolerance,
        detail=f"r^2={fit.r_squared:.4f} on [{fit.window[0]:g}, {fit.window[1]:g}] ({fit.samples} samples)",
    )


def check_margin(report: MarginReport) -> AcceptanceItem:
    where = ""
    if report.worst_t is not None:
        where = f"worst at t={report.worst_t:.6g}, x={report.worst_x:.6g}"
    return AcceptanceItem(
        name=report.name,
        passed=report.passed,
        value=report.min_margin,
        target=f">= -{report.tolerance:g}",
        tolerance=report.tolerance,
        detail=where,
    )


def check_envelope(report: EnvelopeReport) -> AcceptanceItem:
    margin = min(report.upper_margin, report.lower_margin, report.lower_bound_margin)
    return AcceptanceItem(
        name="kinetic_envelope",
        passed=report.passed,
        value=margin,
        target=f">= -{report.tolerance:g}",
        tolerance=report.tolerance,
        detail=f"high-order ODE deviation {report.oracle_deviation:.3e}",
    )


def check_at_most(name: str, value: float, limit: float, detail: str = "") -> AcceptanceItem:
    return AcceptanceItem(
        name=name,
        passed=bool(math.isfinite(value) and value <= limit),
        value=value,
        target=f"<= {limit:g}",
        tolerance=limit,
        detail=detail,
    )


def check_at_least(name: str, value: float, floor: float, detail: str = "") -> AcceptanceItem:
    return AcceptanceItem(
        name=name,
        passed=bool(math.isfinite(value) and value >= floor),
        value=value,
        target=f">= {floor:g}",
        tolerance=floor,
        detail=detail,
    )


def check_close(name: str, value: float, target: float, tolerance: float, detail: str = "") -> AcceptanceItem:
    return AcceptanceItem(
        name=name,
        passed=bool(math.isfinite(value) and abs(value - target) <= tolerance),
        value=value,
        target=f"{target:g} +/- {tolerance:g}",
        tolerance=tolerance,
        detail=detail,
    )


def check_gronwall(reports: list[GronwallReport], required: int) -> AcceptanceItem:
    """At least `required` (x0, T) pairs with nonnegative slack in both inequalities."""
    passed = sum(1 for r in reports if r.passed)
    tolerance = reports[0].tolerance if reports else 0.0
    worst = min((min(r.energy_slack, r.second_slack, r.initial_bound_slack) for r in reports), default=math.nan)
    return AcceptanceItem(
        name="gronwall_pairs",
        passed=passed >= required,
        value=float(passed),
        target=f">= {required} of {len(reports)} pairs",
        tolerance=tolerance,
        detail=f"smallest slack {worst:.3e}",
    )


def all_passed(items: list[AcceptanceItem]) -> bool:
    return bool(items) and all(item.passed for item in items)
