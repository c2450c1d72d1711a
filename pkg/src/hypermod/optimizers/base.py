from __future__ import annotations

import dataclasses
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..hypercore import Partition


@dataclass
class OptimizerResult:
    """Output of one optimizer run.

    ``history`` holds the objective after every accepted move or merge (one
    entry per outer iteration for IRMM); ``events`` holds the same steps as
    dicts for JSONL logging.
    """

    partition: Partition
    objective: float
    criterion: str
    iterations: int
    wall_time: float
    seed: int
    converged: bool = True
    history: list[float] = field(default_factory=list)
    events: list[dict] = field(default_factory=list)
    params: Any = None
    start_partition: Partition | None = None

    @property
    def k_hat(self) -> int:
        return self.partition.K


def resolve_options(cls, opts, overrides):
    if opts is None:
        opts = cls()
    if overrides:
        opts = dataclasses.replace(opts, **overrides)
    return opts


def child_seed(seed: int, *keys: int) -> int:
    """Deterministic 63-bit seed derived from ``seed`` and integer keys."""
    ss = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, *keys])
    return int(ss.generate_state(1, np.uint64)[0] >> np.uint64(1))


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
