"""Radio access model: frame structures for the 1 ms/14-symbol and the
100 us/24-symbol subframe, SNR-driven MCS selection, transport block sizing,
and the per-subframe resource split (frequency-domain resource blocks vs
time-domain symbol runs)."""

from __future__ import annotations

from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .core import NS_PER_MS, NS_PER_US
from .transport import Fragment, Packet

RB_ROUND_ROBIN = "rb_round_robin"
TTI_ROUND_ROBIN = "tti_round_robin"

SUBCARRIERS_PER_RB = 12


@dataclass(frozen=True)
class McsEntry:
    index: int
    spectral_efficiency: float  # bits/s/Hz
    min_snr_db: float


# CQI-style efficiency ladder with operating-point SNR thresholds; shared by
# both radio technologies.
MCS_TABLE: tuple[McsEntry, ...] = (
    McsEntry(1, 0.1523, -6.7),
    McsEntry(2, 0.2344, -4.7),
    McsEntry(3, 0.3770, -2.3),
    McsEntry(4, 0.6016, 0.2),
    McsEntry(5, 0.8770, 2.4),
    McsEntry(6, 1.1758, 4.3),
    McsEntry(7, 1.4766, 5.9),
    McsEntry(8, 1.9141, 8.1),
    McsEntry(9, 2.4063, 10.3),
    McsEntry(10, 2.7305, 11.7),
    McsEntry(11, 3.3223, 14.1),
    McsEntry(12, 3.9023, 16.3),
    McsEntry(13, 4.5234, 18.7),
    McsEntry(14, 5.1152, 21.0),
    McsEntry(15, 5.5547, 22.7),
)


@dataclass(frozen=True)
class FrameConfig:
    subframe_ns: int
    symbols_per_subframe: int
    control_overhead_symbols: int
    scheduler_kind: str
    n_rb: int = 0  # frequency-domain scheduling only
    subcarriers_per_rb: int = SUBCARRIERS_PER_RB
    ul_access_delay_ns: int = 0
    min_tti_symbols: int = 1

    def __post_init__(self) -> None:
        if not 0 <= self.control_overhead_symbols < self.symbols_per_subframe:
            raise ValueError("control overhead must leave at least one data symbol")

    @property
    def symbol_ns(self) -> int:
        # Integer floor; any residual ns is idle guard time inside the subframe.
        return self.subframe_ns // self.symbols_per_subframe

    @property
    def data_symbols(self) -> int:
        return self.symbols_per_subframe - self.control_overhead_symbols

    @property
    def dl_sched_delay_ns(self) -> int:
        # Fixed rule: data enqueued for DL becomes schedulable one subframe later.
        return self.subframe_ns


def lte_frame(
    n_rb: int = 12,
    control_overhead_symbols: int = 3,
    ul_access_delay_ns: int = 9 * NS_PER_MS,
) -> FrameConfig:
    return FrameConfig(
        subframe_ns=1 * NS_PER_MS,
        symbols_per_subframe=14,
        control_overhead_symbols=control_overhead_symbols,
        scheduler_kind=RB_ROUND_ROBIN,
        n_rb=n_rb,
        ul_access_delay_ns=ul_access_delay_ns,
    )


def mmwave_frame(
    control_overhead_symbols: int = 2,
    ul_access_delay_ns: int = 100 * NS_PER_US,
    min_tti_symbols: int = 1,
    n_rb: int = 12,
) -> FrameConfig:
    # n_rb is carried but unused: the TDMA split works in symbols.
    return FrameConfig(
        subframe_ns=100 * NS_PER_US,
        symbols_per_subframe=24,
        control_overhead_symbols=control_overhead_symbols,
        scheduler_kind=TTI_ROUND_ROBIN,
        n_rb=n_rb,
        ul_access_delay_ns=ul_access_delay_ns,
        min_tti_symbols=min_tti_symbols,
    )


def select_mcs(
    snr_db: float, table: tuple[McsEntry, ...] = MCS_TABLE
) -> McsEntry | None:
    """Highest entry whose threshold is <= snr (inclusive lower bound); None
    means no service at this SNR and the node is skipped this subframe."""
    chosen = None
    for entry in table:
        if snr_db >= entry.min_snr_db:
            chosen = entry
        else:
            break
    return chosen


def tbs_bits(
    mcs: McsEntry, alloc_size: int, frame: FrameConfig, bandwidth_hz: float = 0.0
) -> int:
    """Bits carried by an allocation of `alloc_size` resource blocks (LTE) or
    data symbols (mmWave) at the given MCS."""
    if alloc_size <= 0:
        return 0
    if frame.scheduler_kind == RB_ROUND_ROBIN:
        symbols = frame.data_symbols
        return int(
            mcs.spectral_efficiency * alloc_size * frame.subcarriers_per_rb * symbols
        )
    if bandwidth_hz <= 0:
        raise ValueError("symbol-domain transport blocks need the carrier bandwidth")
    return int(
        mcs.spectral_efficiency * bandwidth_hz * alloc_size * frame.symbol_ns / 1e9
    )


def rfid_read(tsn_event_ns: int, t_rfid_ns: int) -> int:
    """Delivery time of a sensed payload at the reader-side application: the
    sensing hop is a pure delay."""
    return tsn_event_ns + t_rfid_ns


@dataclass
class _PendingPacket:
    packet: Packet
    remaining_bits: int
    next_index: int = 0


@dataclass
class TxQueue:
    """FIFO byte queue feeding one node's grants in one direction."""

    node_id: int
    direction: str
    fifo: deque[_PendingPacket] = field(default_factory=deque)
    backlog_bits: int = 0
    eligible_at: int = 0  # engine-managed access-pipeline gate

    @property
    def bytes_backlogged(self) -> int:
        return -(-self.backlog_bits // 8)

    @property
    def has_backlog(self) -> bool:
        return bool(self.fifo)

    def enqueue(self, packet: Packet, cap_bytes: int | None = None) -> bool:
        """Append a packet; False (dropped) if the byte cap would be exceeded."""
        if cap_bytes is not None and self.bytes_backlogged + packet.wire_bytes > cap_bytes:
            return False
        self.fifo.append(_PendingPacket(packet, packet.wire_bits))
        self.backlog_bits += packet.wire_bits
        return True

    def drain(self, max_bits: int) -> list[Fragment]:
        """Cut fragments off the queue head, greedily filling up to max_bits.
        One grant may finish one packet and start the next."""
        out: list[Fragment] = []
        budget = max_bits
        while self.fifo and (budget > 0 or self.fifo[0].remaining_bits == 0):
            head = self.fifo[0]
            take = min(head.remaining_bits, budget)
            head.remaining_bits -= take
            self.backlog_bits -= take
            budget -= take
            last = head.remaining_bits == 0
            out.append(Fragment(head.packet, head.next_index, take, last))
            head.next_index += 1
            if last:
                self.fifo.popleft()
        return out


@dataclass(frozen=True)
class ResourceAllocation:
    """One node's grant in one subframe: RB indices (LTE) or a contiguous
    symbol range (mmWave), plus the transport block it can carry."""

    subframe_index: int
    node_id: int
    direction: str
    resources: range
    tbs_bits: int


def _rotate(sorted_ids: list[int], cursor: int) -> list[int]:
    idx = bisect_left(sorted_ids, cursor)
    if idx == len(sorted_ids):
        idx = 0
    return sorted_ids[idx:] + sorted_ids[:idx]


def schedule_subframe(
    queues: Mapping[int, TxQueue],
    snrs: Mapping[int, float],
    frame: FrameConfig,
    *,
    bandwidth_hz: float = 0.0,
    cursor: int = 0,
    subframe_index: int = 0,
    direction: str = "UL",
    table: tuple[McsEntry, ...] = MCS_TABLE,
) -> tuple[list[ResourceAllocation], int]:
    """Split one subframe's resources among the backlogged queues.

    Callers pass only access-eligible queues; nodes whose SNR is below the
    lowest MCS threshold are skipped here and their backlog ages. Returns the
    allocations and the advanced rotation cursor.
    """
    backlogged = sorted(n for n, q in queues.items() if q.has_backlog)
    mcs: dict[int, McsEntry] = {}
    for node in backlogged:
        entry = select_mcs(snrs[node], table)
        if entry is not None:
            mcs[node] = entry
    order = _rotate([n for n in backlogged if n in mcs], cursor)
    if not order:
        return [], cursor

    if frame.scheduler_kind == RB_ROUND_ROBIN:
        grants = _split_resource_blocks(order, frame)
    else:
        grants = _split_symbols(order, queues, mcs, frame, bandwidth_hz)

    allocs: list[ResourceAllocation] = []
    offset = 0 if frame.scheduler_kind == RB_ROUND_ROBIN else frame.control_overhead_symbols
    for node in order:
        count = grants.get(node, 0)
        if count == 0:
            continue
        allocs.append(
            ResourceAllocation(
                subframe_index=subframe_index,
                node_id=node,
                direction=direction,
                resources=range(offset, offset + count),
                tbs_bits=tbs_bits(mcs[node], count, frame, bandwidth_hz),
            )
        )
        offset += count

    if len(grants) < len(order):
        new_cursor = allocs[-1].node_id + 1 if allocs else cursor
    else:
        new_cursor = order[0] + 1
    return allocs, new_cursor


def _split_resource_blocks(order: list[int], frame: FrameConfig) -> dict[int, int]:
    """Equal round-robin split of n_rb blocks; remainder blocks go to the
    earliest nodes in rotation order."""
    k = len(order)
    base = frame.n_rb // k
    extra = frame.n_rb % k
    grants: dict[int, int] = {}
    for i, node in enumerate(order):
        count = base + (1 if i < extra else 0)
        if count == 0:
            break
        grants[node] = count
    return grants


def _split_symbols(
    order: list[int],
    queues: Mapping[int, TxQueue],
    mcs: Mapping[int, McsEntry],
    frame: FrameConfig,
    bandwidth_hz: float,
) -> dict[int, int]:
    """Flexible-TTI split of the data symbols: everyone gets what their
    backlog needs up to a fair share (but at least min_tti_symbols); leftover
    symbols are redistributed in rotation order, so symbols idle only once
    every backlog is covered."""
    data_symbols = frame.data_symbols
    k = len(order)
    fair = max(data_symbols // k, frame.min_tti_symbols)
    need: dict[int, int] = {}
    for node in order:
        per_symbol = tbs_bits(mcs[node], 1, frame, bandwidth_hz)
        if per_symbol <= 0:
            need[node] = 0
            continue
        need[node] = max(1, -(-queues[node].backlog_bits // per_symbol))

    grants: dict[int, int] = {}
    remaining = data_symbols
    for node in order:
        if remaining == 0:
            break
        if need[node] == 0:
            continue
        take = min(max(min(need[node], fair), frame.min_tti_symbols), remaining)
        grants[node] = take
        remaining -= take
    if remaining > 0:
        for node in order:
            shortfall = need[node] - grants.get(node, 0)
            if shortfall <= 0 or node not in grants:
                continue
            add = min(shortfall, remaining)
            grants[node] += add
            remaining -= add
            if remaining == 0:
                break
    return grants
