"""Per-stage elementary-operation counters (the O(kn) evidence)."""

from __future__ import annotations

import logging
import os
import time
from collections import OrderedDict
from contextlib import contextmanager

log = logging.getLogger("bookbind")


def _configure_logging() -> None:
    if os.environ.get("BOOKBIND_LOG") and not log.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("[bookbind] %(message)s"))
        log.addHandler(handler)
        log.setLevel(logging.DEBUG)


_configure_logging()


class OpCounter:
    """Counts elementary steps per named stage.

    ``tick`` is cheap enough to call inside inner loops; stages are kept in
    first-use order so reports are stable.
    """

    def __init__(self) -> None:
        self.ops: "OrderedDict[str, int]" = OrderedDict()
        self.seconds: "OrderedDict[str, float]" = OrderedDict()
        self.stage = "misc"

    def tick(self, n: int = 1) -> None:
        self.ops[self.stage] = self.ops.get(self.stage, 0) + n

    @contextmanager
    def run(self, stage: str):
        prev = self.stage
        self.stage = stage
        self.ops.setdefault(stage, 0)
        t0 = time.perf_counter()
        try:
            yield self
        finally:
            dt = time.perf_counter() - t0
            self.seconds[stage] = self.seconds.get(stage, 0.0) + dt
            log.debug("stage %-10s ops=%d %.1f ms", stage, self.ops[stage], dt * 1e3)
            self.stage = prev

    @property
    def total(self) -> int:
        return sum(self.ops.values())


NULL = OpCounter()
