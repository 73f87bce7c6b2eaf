"""Stage timing for the scenario graph."""

import time
from dataclasses import dataclass, field
from typing import Any


@dataclass
class StageTimer:
    """Context manager recording the latency of one stage, plus any counts the stage reports."""

    stage: str
    _start: float = field(default=0.0, init=False)
    _metrics: dict[str, float] = field(default_factory=dict, init=False)

    def __enter__(self) -> "StageTimer":
        self._start = time.perf_counter()
        return self

    def __exit__(self, *args: Any) -> None:
        self._metrics["latency_ms"] = (time.perf_counter() - self._start) * 1000

    def record(self, **counts: float) -> None:
        """Attach counts such as snapshots or solver steps."""
        self._metrics.update({k: float(v) for k, v in counts.items()})

    @property
    def metrics(self) -> dict[str, float]:
        return self._metrics
