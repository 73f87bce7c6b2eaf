"""Report artifacts: report.json, one CSV per series, plot.gp.

A directory is written next to its target and swapped in with renames, so
re-emitting replaces the previous artifacts as a whole.
"""

import csv
import hashlib
import json
import logging
import shutil
import tempfile
from pathlib import Path

from models.errors import EmissionError
from models.report import Report, TimeSeries
from models.scenario import ScenarioConfig

logger = logging.getLogger(__name__)

REPORT_FILE = "report.json"
PLOT_FILE = "plot.gp"


def canonical_json(payload: object) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")


def config_hash(cfg: ScenarioConfig) -> str:
    """git blob hash of the canonical config JSON."""
    body = canonical_json(cfg.model_dump(mode="json"))
    return hashlib.sha1(b"blob %d\0" % len(body) + body).hexdigest()


def results_digest(report: Report) -> str:
    """sha256 over the numeric content; timing and timestamps are left out."""
    payload = report.model_dump(
        mode="json",
        include={"series", "fits", "tables", "measurements", "checks", "passed", "error", "failed_stage"},
    )
    return hashlib.sha256(canonical_json(payload)).hexdigest()


def _csv_name(series: TimeSeries) -> str:
    safe = "".join(c if c.isalnum() or c in "-_" else "_" for c in series.name)
    return f"{safe}.csv"


def _write_csv(path: Path, series: TimeSeries) -> None:
    envelope = series.envelope or [None] * len(series.times)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t", "value", "envelope"])
        for t, v, e in zip(series.times, series.values, envelope):
            writer.writerow([repr(t), repr(v), "" if e is None else repr(e)])


def plot_script(report: Report) -> str:
    lines = [
        f"# {report.scenario}: {report.claim}",
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set logscale xy",
        "set xlabel 't'",
    ]
    for series in report.series:
        name = _csv_name(series)
        lines.append(f"set title '{series.name}'")
        plot = f"plot '{name}' using 1:2 with linespoints title 'value'"
        if series.envelope is not None:
            plot += f", '{name}' using 1:3 with lines title 'envelope'"
        lines.append(plot)
        lines.append("pause -1")
    return "\n".join(lines) + "\n"


def emit(report: Report, directory: str | Path) -> list[Path]:
    """Write the report artifacts into `directory`, replacing whatever was there."""
    target = Path(directory)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        staging = Path(tempfile.mkdtemp(prefix=f".{target.name}-", dir=target.parent))
    except OSError as exc:
        raise EmissionError(str(target), str(exc)) from exc

    written = [REPORT_FILE]
    try:
        (staging / REPORT_FILE).write_text(report.model_dump_json(indent=2), encoding="utf-8")
        if report.series:
            for series in report.series:
                _write_csv(staging / _csv_name(series), series)
                written.append(_csv_name(series))
            (staging / PLOT_FILE).write_text(plot_script(report), encoding="utf-8")
            written.append(PLOT_FILE)

        previous = None
        if target.exists():
            previous = target.with_name(f".{target.name}.old")
            if previous.exists():
                shutil.rmtree(previous)
            target.rename(previous)
        staging.rename(target)
        if previous is not None:
            shutil.rmtree(previous)
    except OSError as exc:
        shutil.rmtree(staging, ignore_errors=True)
        raise EmissionError(str(target), str(exc)) from exc

    logger.info("wrote %d artifact(s) to %s", len(written), target)
    return [target / name for name in written]


def load_report(directory: str | Path) -> Report:
    path = Path(directory) / REPORT_FILE
    try:
        return Report.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise EmissionError(str(path), str(exc)) from exc


SUITE_FILE = "suite.json"


def write_suite_summary(reports: list[Report], jobs: list[str], directory: str | Path, elapsed: float) -> Path:
    """suite.json: one line of verdict per job plus the total wall time."""
    path = Path(directory) / SUITE_FILE
    summary = {
        "passed": all(r.passed for r in reports),
        "wall_time_s": elapsed,
        "jobs": [
            {
                "directory": job,
                "scenario": r.scenario,
                "passed": r.passed,
                "error": r.error,
                "config_hash": r.config_hash,
                "results_digest": r.results_digest,
            }
            for job, r in zip(jobs, reports)
        ],
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise EmissionError(str(path), str(exc)) from exc
    return path
