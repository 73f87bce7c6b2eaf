"""Fit stage: power-law fits for the handler's fit requests.

Series whose values never exceed ZERO_SERIES are recorded as trivially
decaying and skipped. A failed fit is a warning for informational requests
and a stage failure otherwise.
"""

import dataclasses
import logging

import numpy as np

from models.errors import FitError
from pipeline.metrics import StageTimer
from pipeline.scenarios import get_handler
from pipeline.scenarios.base import ZERO_SERIES, fit_window
from pipeline.stages.base import STAGE_ERRORS, stage_failure, with_metrics
from pipeline.state import ScenarioState
from structures.decay import decay_fit

logger = logging.getLogger(__name__)


def run_fit(state: ScenarioState) -> dict:
    cfg = state["config"]
    diagnosis = state["diagnosis"]
    fits = dict(diagnosis.fits)
    zero_series = list(diagnosis.zero_series)
    series = {s.name: s for s in diagnosis.series}
    timer = StageTimer("fit")
    try:
        with timer:
            for request in get_handler(cfg.scenario).fit_requests(cfg):
                if request.series not in series:
                    raise FitError(f"no series named {request.series!r} to fit")
                s = series[request.series]
                values = np.asarray(s.values, dtype=float)
                if values.size == 0 or float(np.max(np.abs(values))) <= ZERO_SERIES:
                    zero_series.append(s.name)
                    continue
                try:
                    fit = decay_fit(s.times, values, fit_window(cfg, request, s.times), request.log_correction)
                except FitError as exc:
                    if not request.informational:
                        raise
                    logger.warning("%s: informational fit of %s skipped: %s", cfg.scenario, s.name, exc)
                    continue
                fits[s.name] = fit
                if s.envelope is None:
                    envelope = [float(e) for e in fit.envelope(np.asarray(s.times))]
                    series[s.name] = s.model_copy(update={"envelope": envelope})
            timer.record(fits=len(fits), zero_series=len(zero_series))
    except STAGE_ERRORS as exc:
        return stage_failure(state, "fit", exc, timer.metrics)
    updated = dataclasses.replace(
        diagnosis,
        series=[series[s.name] for s in diagnosis.series],
        fits=fits,
        zero_series=zero_series,
    )
    return {"diagnosis": updated, "stage_metrics": with_metrics(state, "fit", timer.metrics)}
