"""
Injectable clocks for transcript and manifest timestamps.
"""

from datetime import datetime, timedelta, timezone
from typing import Protocol

LOGICAL_EPOCH = datetime(2025, 1, 1, tzinfo = timezone.utc)


class Clock(Protocol):
    def now(self) -> datetime: ...


class SystemClock:
    """Wall clock, UTC."""

    def now(self) -> datetime:
        return datetime.now(timezone.utc)


class LogicalClock:
    """
    Deterministic clock: each call advances one second from a fixed epoch.

    Scripted replays use it so transcripts are byte-identical across runs.
    """

    def __init__(self, start_tick: int = 0):
        self.tick = start_tick

    def now(self) -> datetime:
        value = LOGICAL_EPOCH + timedelta(seconds = self.tick)
        self.tick += 1
        return value


def isoformat(value: datetime) -> str:
    return value.isoformat(timespec = "milliseconds")
