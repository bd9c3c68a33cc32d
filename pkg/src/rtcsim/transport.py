"""Datagram construction with IPv6/UDP overhead, segmentation into
grant-sized fragments, in-order reassembly, and the creation-time tag that
end-to-end latency is measured against."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

IPV6_HEADER_BYTES = 40
UDP_HEADER_BYTES = 8
HEADER_BYTES = IPV6_HEADER_BYTES + UDP_HEADER_BYTES


class ModelViolationError(RuntimeError):
    """A structural assumption of the model was broken (duplicate or
    out-of-order fragment); the run is invalid and must abort."""


@dataclass
class Packet:
    packet_id: int
    src: str
    dst: str
    payload_bytes: int
    created_at: int
    header_bytes: int = HEADER_BYTES
    hop_log: list[tuple[str, int]] = field(default_factory=list)

    @property
    def wire_bytes(self) -> int:
        return self.payload_bytes + self.header_bytes

    @property
    def wire_bits(self) -> int:
        return 8 * self.wire_bytes

    def log_hop(self, node: str, at: int) -> None:
        self.hop_log.append((node, at))


def make_datagram(
    payload_bytes: int, src: str, dst: str, now: int, packet_id: int
) -> Packet:
    """Application datagram stamped with its immutable creation-time tag."""
    if payload_bytes < 0:
        raise ValueError("payload size cannot be negative")
    return Packet(
        packet_id=packet_id, src=src, dst=dst, payload_bytes=payload_bytes, created_at=now
    )


@dataclass(frozen=True)
class Fragment:
    packet: Packet
    index: int
    size_bits: int
    is_last: bool


def segment(packet: Packet, grants: Iterable[int]) -> list[Fragment]:
    """Greedy fill of the packet's wire bits into successive grants; the grant
    schedule must be large enough to carry the whole packet. A zero-bit packet
    yields a single empty terminal fragment so its tag still travels."""
    remaining = packet.wire_bits
    fragments: list[Fragment] = []
    index = 0
    for grant in grants:
        if grant <= 0:
            raise ValueError("grant capacities must be positive")
        take = min(remaining, grant)
        remaining -= take
        fragments.append(Fragment(packet, index, take, remaining == 0))
        index += 1
        if remaining == 0:
            return fragments
    if remaining == 0 and not fragments:
        return [Fragment(packet, 0, 0, True)]
    raise ValueError(f"grant schedule exhausted with {remaining} bits left")


class Reassembler:
    """Rebuilds packets from fragments arriving over one FIFO path. Fragments
    of one packet must arrive exactly once and in index order; anything else
    is a model violation, not a recoverable condition."""

    def __init__(self) -> None:
        self._expected: dict[int, int] = {}  # packet_id -> next fragment index

    def feed(self, fragment: Fragment) -> Packet | None:
        pid = fragment.packet.packet_id
        expected = self._expected.get(pid, 0)
        if fragment.index != expected:
            raise ModelViolationError(
                f"packet {pid}: fragment {fragment.index} arrived, expected {expected}"
            )
        if fragment.is_last:
            self._expected.pop(pid, None)
            return fragment.packet
        self._expected[pid] = expected + 1
        return None

    @property
    def pending(self) -> int:
        return len(self._expected)
