"""Deterministic discrete-event engine: integer-nanosecond clock, FIFO-tie-break
event queue, and splittable seeded random number streams."""

from __future__ import annotations

import heapq
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

NS_PER_US = 1_000
NS_PER_MS = 1_000_000
NS_PER_S = 1_000_000_000

_U64_MASK = (1 << 64) - 1


class ScheduleInPastError(RuntimeError):
    """Raised when an event is scheduled before the current virtual time."""


@dataclass(order=True)
class EventRecord:
    fire_at: int
    seq: int
    action: Callable[[], None] = field(compare=False)


@dataclass
class RunStats:
    events_fired: int
    final_time: int


class Simulator:
    """Sequential event loop over an integer-ns virtual clock.

    Dequeue order is strictly (fire_at, seq): same-time events fire in
    insertion order, never by hash or identity.
    """

    def __init__(self) -> None:
        self._now = 0
        self._heap: list[EventRecord] = []
        self._seq = 0

    def now(self) -> int:
        return self._now

    def schedule(self, at: int, action: Callable[[], None]) -> EventRecord:
        if at < self._now:
            raise ScheduleInPastError(
                f"schedule at t={at} ns is before now={self._now} ns"
            )
        self._seq += 1
        ev = EventRecord(at, self._seq, action)
        heapq.heappush(self._heap, ev)
        return ev

    def schedule_in(self, delay: int, action: Callable[[], None]) -> EventRecord:
        return self.schedule(self._now + delay, action)

    def run_until(self, t_end: int) -> RunStats:
        """Fire every event with fire_at <= t_end (inclusive boundary), then
        advance the clock to exactly t_end."""
        fired = 0
        heap = self._heap
        while heap and heap[0].fire_at <= t_end:
            ev = heapq.heappop(heap)
            self._now = ev.fire_at
            ev.action()
            fired += 1
        self._now = t_end
        return RunStats(events_fired=fired, final_time=t_end)


def _key_word(part: int | str) -> int:
    if isinstance(part, str):
        return zlib.crc32(part.encode("ascii"))
    if part < 0:
        raise ValueError("stream key parts must be non-negative")
    return int(part)


class StreamFactory:
    """Derives statistically independent RNG streams from a root seed and a
    structured key, so that adding nodes or purposes never perturbs the draws
    of existing (key, seed) pairs."""

    def __init__(self, root_seed: int, *scope: int | str) -> None:
        self.root_seed = int(root_seed) & _U64_MASK
        self._scope = tuple(_key_word(p) for p in scope)

    def stream(self, *key: int | str) -> np.random.Generator:
        words = [self.root_seed, *self._scope, *(_key_word(p) for p in key)]
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(words)))
