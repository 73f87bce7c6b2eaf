import pytest

from models.scenario import ScenarioConfig

KERNEL_CONFIG = {
    "scenario": "kernel_table",
    "params": {"a": 1.0, "b": 2.0, "k": 1.0},
    "grid": {"length": 64.0, "points": 64},
    "initial": {"name": "constant_pair"},
    "horizon": 1.0,
    "output": {"spacing": "linear", "start": 0.5, "stop": 1.0, "count": 2},
    "kernel": {"count": 8, "oracle_samples": 50},
}

NEUMANN_CONFIG = {
    "scenario": "neumann_interval",
    "params": {"a": 1.0, "b": 2.0, "k": 1.0},
    "grid": {"length": 5.0, "points": 65, "bc": "neumann"},
    "initial": {"name": "gaussian_bump", "options": {"u_base": 0.5, "width": 0.5, "centre": 1.0}},
    "horizon": 40.0,
    "output": {"spacing": "linear", "start": 1.0, "stop": 40.0, "count": 40},
}


@pytest.fixture
def kernel_config() -> ScenarioConfig:
    return ScenarioConfig.model_validate(KERNEL_CONFIG)


@pytest.fixture
def neumann_config() -> ScenarioConfig:
    return ScenarioConfig.model_validate(NEUMANN_CONFIG)
