"""Shared pieces of the scenario handlers.

A handler is a module exposing

    CLAIM                                   property under test
    fit_requests(cfg) -> list[FitRequest]   power-law fits run by the fit stage
    simulate(cfg, context) -> dict          trajectories and other raw results
    diagnose(cfg, context, artifacts) -> Diagnosis
    assess(cfg, diagnosis) -> list[AcceptanceItem]

Slope checks for non-informational fit requests are added by the assess
stage; handlers only return their scenario-specific items.
"""

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from models.report import TimeSeries
from models.scenario import ScenarioConfig
from models.structure import DecayFit

ZERO_SERIES = 1e-12

ToleranceName = Literal["slope", "rho_slope", "second_order_slope"]


@dataclass(frozen=True)
class FitRequest:
    """A power-law fit of one named series against an expected slope."""

    series: str
    target: float
    tolerance: ToleranceName = "slope"
    log_correction: bool = False
    informational: bool = False
    window: tuple[float, float] | None = None


@dataclass
class Diagnosis:
    series: list[TimeSeries] = field(default_factory=list)
    tables: dict[str, list[dict[str, float]]] = field(default_factory=dict)
    measurements: dict[str, float | str | bool] = field(default_factory=dict)
    margins: dict[str, object] = field(default_factory=dict)
    fits: dict[str, DecayFit] = field(default_factory=dict)
    zero_series: list[str] = field(default_factory=list)

    def get_series(self, name: str) -> TimeSeries:
        for s in self.series:
            if s.name == name:
                return s
        raise KeyError(name)


def make_series(name: str, times, values, envelope=None) -> TimeSeries:
    return TimeSeries(
        name=name,
        times=[float(t) for t in times],
        values=[float(v) for v in values],
        envelope=None if envelope is None else [float(e) for e in envelope],
    )


def positive_times(times, values) -> tuple[np.ndarray, np.ndarray]:
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    keep = times > 0
    return times[keep], values[keep]


def fit_window(cfg: ScenarioConfig, request: FitRequest, times) -> tuple[float, float]:
    if request.window is not None:
        return request.window
    if cfg.fit_window is not None:
        return cfg.fit_window.as_tuple()
    times = np.asarray(times, dtype=float)
    times = times[times > 0]
    return float(times[0]), float(times[-1])


def output_times(cfg: ScenarioConfig, extra=()) -> np.ndarray:
    """Configured snapshot times within the horizon, merged with `extra`."""
    times = np.union1d(cfg.output.times(), np.asarray(extra, dtype=float))
    return times[(times > 0) & (times <= cfg.horizon * (1 + 1e-12))]
