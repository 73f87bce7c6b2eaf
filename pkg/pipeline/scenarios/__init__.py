"""Scenario handlers keyed by scenario id."""

from types import ModuleType

from models.errors import ConfigurationError
from pipeline.scenarios import (
    equal_diff_decay,
    fisher_counterexample,
    kernel_table,
    neumann_interval,
    rdnm_decay,
    riemann_mixing,
    structure_sweep,
    unequal_diff_decay,
)

HANDLERS: dict[str, ModuleType] = {
    "equal_diff_decay": equal_diff_decay,
    "unequal_diff_decay": unequal_diff_decay,
    "riemann_mixing": riemann_mixing,
    "fisher_counterexample": fisher_counterexample,
    "neumann_interval": neumann_interval,
    "kernel_table": kernel_table,
    "structure_sweep": structure_sweep,
    "rdnm_decay": rdnm_decay,
}


def get_handler(scenario: str) -> ModuleType:
    try:
        return HANDLERS[scenario]
    except KeyError:
        raise ConfigurationError(f"unknown scenario {scenario!r}") from None
