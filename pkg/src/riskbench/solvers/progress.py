"""Cooperative progress/cancellation plumbing shared by the solvers."""

from __future__ import annotations

import time
from typing import Callable

from ..errors import FitCancelled

ProgressCallback = Callable[[int, float | None], None]
StopSignal = Callable[[], bool]


class Tracker:
    """Counts candidate evaluations, relays progress, honors stop signals."""

    def __init__(
        self,
        progress: ProgressCallback | None,
        should_stop: StopSignal | None,
        time_limit_seconds: float,
    ):
        self._progress = progress
        self._should_stop = should_stop
        self._start = time.monotonic()
        self._deadline = self._start + time_limit_seconds
        self._last_report = 0
        self.candidates = 0
        self.incumbent: float | None = None

    def bump(self, n: int, incumbent: float | None) -> None:
        self.candidates += n
        if incumbent is not None and (
            self.incumbent is None or incumbent < self.incumbent
        ):
            self.incumbent = incumbent
        if self._progress and self.candidates - self._last_report >= 1000:
            self._last_report = self.candidates
            self._progress(self.candidates, self.incumbent)

    def finish(self) -> None:
        if self._progress:
            self._progress(self.candidates, self.incumbent)

    def check_cancelled(self) -> None:
        if self._should_stop and self._should_stop():
            raise FitCancelled("fit cancelled by stop signal")

    def out_of_time(self) -> bool:
        return time.monotonic() > self._deadline

    def elapsed(self) -> float:
        return time.monotonic() - self._start
