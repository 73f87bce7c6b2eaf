"""CLI entry point for the rdlab reaction-diffusion lab."""

import argparse
import logging
import os
import sys
from pathlib import Path

from dotenv import load_dotenv
from pydantic import ValidationError

from models.errors import ConfigurationError, EmissionError
from models.report import Report
from models.scenario import ScenarioConfig
from pipeline.graph import run_scenario, run_suite
from pipeline.scenarios import HANDLERS

logger = logging.getLogger("rdlab")

CONFIG_ROOT = Path(__file__).resolve().parent / "configs"
DEFAULT_OUT_DIR = "results"


def load_config(path: str | Path, seed: int | None = None) -> ScenarioConfig:
    """Read and validate one scenario file; --seed replaces the stored seed."""
    path = Path(path)
    try:
        cfg = ScenarioConfig.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigurationError(f"{path}: {exc}") from exc
    except ValidationError as exc:
        raise ConfigurationError(f"{path}: {exc}") from exc
    if seed is not None:
        cfg = ScenarioConfig.model_validate({**cfg.model_dump(), "seed": seed})
    return cfg


def load_suite(name: str, seed: int | None = None) -> list[ScenarioConfig]:
    directory = CONFIG_ROOT / name
    files = sorted(directory.glob("*.json"))
    if not files:
        raise ConfigurationError(f"no scenario files in {directory}")
    return [load_config(f, seed) for f in files]


def format_report(report: Report) -> str:
    """Format a Report as readable text."""
    lines = []
    lines.append("=" * 70)
    lines.append(f"  {report.scenario.upper()}: {'PASS' if report.passed else 'FAIL'}")
    lines.append("=" * 70)
    lines.append("")

    lines.append("CLAIM")
    lines.append("-" * 40)
    lines.append(report.claim)
    lines.append("")

    if report.error:
        lines.append(f"ERROR in {report.failed_stage}")
        lines.append("-" * 40)
        lines.append(report.error)
        lines.append("")

    if report.fits:
        lines.append("DECAY FITS")
        lines.append("-" * 40)
        for name, fit in report.fits.items():
            lines.append(
                f"  {name:24s} slope {fit.slope:+.4f}  r^2 {fit.r_squared:.4f}  "
                f"[{fit.window[0]:g}, {fit.window[1]:g}]"
            )
        lines.append("")

    if report.checks:
        lines.append("ACCEPTANCE")
        lines.append("-" * 40)
        for item in report.checks:
            value = "" if item.value is None else f"{item.value:.6g}"
            tag = "ok  " if item.passed else "FAIL"
            lines.append(f"  [{tag}] {item.name:32s} {value:>14s}  target {item.target}")
        lines.append("")

    lines.append("=" * 70)
    lines.append(f"  config {report.config_hash[:12]}  results {report.results_digest[:12]}  {report.wall_time_s:.1f}s")
    lines.append("=" * 70)
    return "\n".join(lines)


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rdlab", description="Numerical lab for the reaction A = 2B with diffusion.")
    parser.add_argument("--out", help="output directory (default $RDLAB_OUT_DIR or ./results)")
    parser.add_argument("--seed", type=int, help="override the seed of every config")
    parser.add_argument("--threads", type=int, help="concurrent suite jobs (default $RDLAB_THREADS or 1)")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run one scenario file")
    run.add_argument("config")

    suite = commands.add_parser("suite", help="run every scenario file of a suite")
    suite.add_argument("name", help="suite directory under configs/, e.g. acceptance")

    listing = commands.add_parser("list", help="list scenarios")
    listing.add_argument("what", choices=["scenarios"])
    return parser


def cli(argv: list[str] | None = None) -> int:
    """Run the lab from the command line; returns the exit status."""
    load_dotenv()
    logging.basicConfig(
        level=os.getenv("RDLAB_LOG_LEVEL", "INFO").upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    args = _parser().parse_args(argv)

    if args.command == "list":
        for scenario, handler in HANDLERS.items():
            print(f"{scenario:24s} {handler.CLAIM}")
        return 0

    out_dir = Path(args.out or os.getenv("RDLAB_OUT_DIR") or DEFAULT_OUT_DIR)
    threads = args.threads or int(os.getenv("RDLAB_THREADS", "1"))

    try:
        if args.command == "run":
            configs = [load_config(args.config, args.seed)]
        else:
            configs = load_suite(args.name, args.seed)
    except ConfigurationError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 2

    if args.command == "run":
        try:
            reports = [run_scenario(configs[0], out_dir / configs[0].scenario)]
        except EmissionError as exc:
            print(f"Error: {exc}", file=sys.stderr)
            return 1
    else:
        reports = run_suite(configs, out_dir, threads)

    for report in reports:
        print(format_report(report))
        print()
    passed = sum(r.passed for r in reports)
    print(f"{passed}/{len(reports)} scenario(s) passed; artifacts in {out_dir}")
    return 0 if passed == len(reports) else 1


if __name__ == "__main__":
    sys.exit(cli())
