"""LangGraph pipelines.

Scenario: Prepare → Simulate → Diagnose → Fit → Assess → Report, where an
error in any stage routes to a failure report instead.

Suite: one scenario run per config, fanned out with Send and merged into
`reports`; the number of concurrent jobs is capped by max_concurrency.
"""

import logging
import time
from collections import Counter
from pathlib import Path
from typing import Literal

from langgraph.graph import END, START, StateGraph
from langgraph.types import Send

from models.errors import EmissionError
from models.report import Report
from models.scenario import ScenarioConfig
from pipeline.emit import config_hash, emit, write_suite_summary
from pipeline.scenarios import get_handler
from pipeline.stages.assess import run_assess
from pipeline.stages.diagnose import run_diagnose
from pipeline.stages.fit import run_fit
from pipeline.stages.prepare import run_prepare
from pipeline.stages.report import run_failure_report, run_report
from pipeline.stages.simulate import run_simulate
from pipeline.state import JobState, ScenarioState, SuiteState

logger = logging.getLogger(__name__)

STAGES = ("prepare", "simulate", "diagnose", "fit", "assess")


# ── Conditional routing ──


def should_continue(state: ScenarioState) -> Literal["continue", "failure_report"]:
    """Stop at the first stage that recorded an error."""
    if state.get("error"):
        return "failure_report"
    return "continue"


# ── Scenario graph ──


def build_scenario_graph():
    """Build and compile the per-scenario pipeline."""
    workflow = StateGraph(ScenarioState)

    workflow.add_node("prepare", run_prepare)
    workflow.add_node("simulate", run_simulate)
    workflow.add_node("diagnose", run_diagnose)
    workflow.add_node("fit", run_fit)
    workflow.add_node("assess", run_assess)
    workflow.add_node("report", run_report)
    workflow.add_node("failure_report", run_failure_report)

    workflow.add_edge(START, "prepare")
    for stage, following in zip(STAGES, STAGES[1:] + ("report",)):
        workflow.add_conditional_edges(
            stage,
            should_continue,
            {"continue": following, "failure_report": "failure_report"},
        )

    workflow.add_edge("report", END)
    workflow.add_edge("failure_report", END)
    return workflow.compile()


def run_scenario(cfg: ScenarioConfig, out_dir: str | Path | None = None) -> Report:
    """Run one scenario; with out_dir the artifacts are written there (EmissionError on failure)."""
    graph = build_scenario_graph()
    initial_state: ScenarioState = {
        "config": cfg,
        "out_dir": None if out_dir is None else str(out_dir),
        "checks": [],
        "error": None,
        "failed_stage": None,
        "stage_metrics": {},
        "started": time.perf_counter(),
    }
    result = graph.invoke(initial_state)
    report = result["report"]
    if out_dir is not None:
        emit(report, out_dir)
    return report


# ── Suite graph ──


def job_directories(configs: list[ScenarioConfig]) -> list[str]:
    """Scenario id per job, suffixed with the job index when an id repeats."""
    counts = Counter(cfg.scenario for cfg in configs)
    return [cfg.scenario if counts[cfg.scenario] == 1 else f"{cfg.scenario}_{i}" for i, cfg in enumerate(configs)]


def fan_out(state: SuiteState) -> list[Send]:
    out_dir = state.get("out_dir")
    configs = state["configs"]
    return [
        Send("run_job", {"config": cfg, "out_dir": None if out_dir is None else str(Path(out_dir) / name)})
        for cfg, name in zip(configs, job_directories(configs))
    ]


def run_job(state: JobState) -> dict:
    """One suite job; an emission failure marks its report as errored."""
    try:
        report = run_scenario(state["config"], state["out_dir"])
    except EmissionError as exc:
        logger.error("%s: %s", state["config"].scenario, exc)
        report = build_emission_failure(state["config"], exc)
    return {"reports": [report]}


def build_emission_failure(cfg: ScenarioConfig, exc: EmissionError) -> Report:
    return Report(
        scenario=cfg.scenario,
        claim=get_handler(cfg.scenario).CLAIM,
        config=cfg,
        config_hash=config_hash(cfg),
        passed=False,
        error=f"EmissionError: {exc}",
        failed_stage="emit",
    )


def build_suite_graph():
    workflow = StateGraph(SuiteState)
    workflow.add_node("run_job", run_job)
    workflow.add_conditional_edges(START, fan_out, ["run_job"])
    workflow.add_edge("run_job", END)
    return workflow.compile()


def run_suite(
    configs: list[ScenarioConfig],
    out_dir: str | Path | None = None,
    threads: int = 1,
) -> list[Report]:
    """Run every config, at most `threads` at a time; reports come back in config order."""
    if not configs:
        return []
    start = time.perf_counter()
    graph = build_suite_graph()
    result = graph.invoke(
        {"configs": configs, "out_dir": None if out_dir is None else str(out_dir), "reports": []},
        config={"max_concurrency": max(1, threads)},
    )
    reports = sorted(result["reports"], key=lambda r: configs.index(r.config))
    elapsed = time.perf_counter() - start
    logger.info("suite: %d/%d passed in %.1f s", sum(r.passed for r in reports), len(reports), elapsed)
    if out_dir is not None:
        write_suite_summary(reports, job_directories(configs), out_dir, elapsed)
    return reports
