"""Application endpoints: reader-side traffic generation, the edge forwarder
on the base station, and the control-object receiver that closes the latency
measurement."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .transport import Packet

MODE_PERIODIC = "periodic"
MODE_ONE_SHOT = "one_shot"


@dataclass
class TrafficProfile:
    mode: str
    period_ns: int
    payload_bytes: int
    start_jitter_ns: int

    def __post_init__(self) -> None:
        if self.mode not in (MODE_PERIODIC, MODE_ONE_SHOT):
            raise ValueError(f"unknown traffic mode {self.mode!r}")
        if self.mode == MODE_PERIODIC and self.period_ns <= 0:
            raise ValueError("periodic traffic needs a positive period")
        if self.start_jitter_ns < 0:
            raise ValueError("start jitter window cannot be negative")


def send_times(
    profile: TrafficProfile, duration_ns: int, rng: np.random.Generator
) -> list[int]:
    """Event times for one sender: a uniform start offset inside the jitter
    window, then one event per period (or just the one event in one-shot
    mode)."""
    jitter = int(rng.integers(0, profile.start_jitter_ns)) if profile.start_jitter_ns else 0
    if profile.mode == MODE_ONE_SHOT:
        return [jitter] if jitter < duration_ns else []
    return list(range(jitter, duration_ns, profile.period_ns))


@dataclass
class EcServerParams:
    service_time_ns: int = 0
    queue_capacity: int = 10_000

    def __post_init__(self) -> None:
        if self.service_time_ns < 0:
            raise ValueError("service time cannot be negative")
        if self.queue_capacity < 1:
            raise ValueError("queue capacity must be at least 1")


class EcForwarder:
    """FIFO single-server model of the edge application: departure is
    max(arrival, previous departure) + service time. Arrivals beyond the
    queue capacity are dropped."""

    def __init__(self, params: EcServerParams) -> None:
        self.params = params
        self._last_departure = 0
        self._in_system = 0
        self.dropped = 0

    def offer(self, now: int) -> int | None:
        """Admit a packet arriving now; returns its departure time, or None
        if the queue is full."""
        if self._in_system >= self.params.queue_capacity:
            self.dropped += 1
            return None
        departure = max(now, self._last_departure) + self.params.service_time_ns
        self._last_departure = departure
        self._in_system += 1
        return departure

    def departed(self) -> None:
        self._in_system -= 1


@dataclass(frozen=True)
class LatencyRecord:
    packet_id: int
    drn_id: int
    lco_id: int
    created_at: int
    delivered_at: int
    td_ns: int
    met_deadline: bool


def co_app_receive(
    packet: Packet, now: int, epsilon_ns: int, drn_id: int, lco_id: int
) -> LatencyRecord:
    """Close the measurement at the control object: latency is delivery time
    minus the immutable creation tag."""
    td = now - packet.created_at
    if td < 0:
        raise AssertionError("delivery precedes creation tag")
    return LatencyRecord(
        packet_id=packet.packet_id,
        drn_id=drn_id,
        lco_id=lco_id,
        created_at=packet.created_at,
        delivered_at=now,
        td_ns=td,
        met_deadline=td <= epsilon_ns,
    )


def deadline_fraction(records: list[LatencyRecord], packets_sent: int) -> float:
    """Fraction of deliveries inside the deadline; 1.0 for an idle run with
    no sends, 0.0 when sends exist but nothing was delivered."""
    if not records:
        return 1.0 if packets_sent == 0 else 0.0
    met = sum(1 for r in records if r.met_deadline)
    return met / len(records)


@dataclass
class RunCounters:
    """Per-run packet conservation ledger: sent = delivered + dropped +
    in-flight at the end of the run."""

    sent: int = 0
    delivered: int = 0
    dropped: int = 0
    records: list[LatencyRecord] = field(default_factory=list)

    @property
    def in_flight(self) -> int:
        return self.sent - self.delivered - self.dropped
