"""One complete simulation run: seeded deployment, per-link channel state,
the uplink and downlink radio cells, the edge forwarder on the base station,
and end-to-end latency bookkeeping."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import channel as ch
from .apps import (
    EcForwarder,
    RunCounters,
    co_app_receive,
    send_times,
)
from .config import TAG_AT_TSN_EVENT, ScenarioConfig
from .core import Simulator, StreamFactory
from .radio import RB_ROUND_ROBIN, TxQueue, rfid_read, schedule_subframe, select_mcs
from .topology import ROLE_DRN, ROLE_LCO, Deployment, distance_3d, place_random
from .transport import Fragment, Packet, Reassembler


@dataclass
class LinkDebug:
    distance_m: float
    los: bool
    snr_db: float
    mcs_index: int


@dataclass(frozen=True)
class AllocSample:
    subframe_index: int
    node_label: str
    direction: str
    resources: str
    tbs_bits: int


@dataclass
class RunResult:
    n_pairs: int
    run_index: int
    counters: RunCounters
    in_flight: int
    final_time: int
    snr_samples: list[ch.SnrSample] = field(default_factory=list)
    alloc_samples: list[AllocSample] = field(default_factory=list)
    link_debug: dict[str, LinkDebug] = field(default_factory=dict)


class _RadioLink:
    """Link budget split into a static part and the drifting shadow term, so
    per-subframe SNR reads are O(1)."""

    __slots__ = ("state", "budget_db", "stream", "snr_db", "mcs")

    def __init__(self, state: ch.LinkState, budget_db: float, stream: np.random.Generator):
        self.state = state
        self.budget_db = budget_db
        self.stream = stream
        self.refresh()

    def refresh(self) -> None:
        self.snr_db = self.budget_db - self.state.shadow_db
        self.mcs = select_mcs(self.snr_db)


class _Cell:
    """Per-direction scheduler: drives the per-node transmit queues at
    subframe boundaries and hands drained fragments to the receiver after the
    air-time of their allocation."""

    def __init__(
        self,
        sim: Simulator,
        cfg: ScenarioConfig,
        direction: str,
        links: dict[int, _RadioLink],
        deliver: Callable[[list[Fragment], int], None],
        label_of: Callable[[int], str],
        trace_node: int | None = None,
    ):
        self.sim = sim
        self.frame = cfg.frame
        self.bandwidth_hz = cfg.channel.bandwidth_hz
        self.queue_cap_bytes = cfg.queue_cap_bytes
        self.direction = direction
        self.links = links
        self.deliver = deliver
        self.label_of = label_of
        self.trace_node = trace_node
        self.access_delay_ns = (
            cfg.frame.ul_access_delay_ns if direction == ch.UL else cfg.frame.dl_sched_delay_ns
        )
        self.queues: dict[int, TxQueue] = {}
        self.cursor = 0
        self.snr_samples: list[ch.SnrSample] = []
        self.alloc_samples: list[AllocSample] | None = None
        self._armed = False
        self._last_tick_at = -1

    def enqueue(self, node: int, packet: Packet) -> bool:
        q = self.queues.get(node)
        if q is None:
            q = TxQueue(node_id=node, direction=self.direction)
            # Empty-to-backlogged transition pays the access pipeline once.
            q.eligible_at = self.sim.now() + self.access_delay_ns
            self.queues[node] = q
        if not q.enqueue(packet, self.queue_cap_bytes):
            if not q.has_backlog:
                del self.queues[node]
            return False
        self._arm()
        return True

    def _arm(self) -> None:
        if self._armed:
            return
        sub = self.frame.subframe_ns
        now = self.sim.now()
        at = -(-now // sub) * sub
        if at == self._last_tick_at:
            at += sub  # this boundary's grant already happened
        self._armed = True
        self.sim.schedule(at, self._tick)

    def _tick(self) -> None:
        now = self.sim.now()
        self._armed = False
        self._last_tick_at = now
        sub = self.frame.subframe_ns
        eligible = {
            n: q for n, q in self.queues.items() if q.eligible_at <= now and q.has_backlog
        }
        if eligible:
            snrs = {n: self.links[n].snr_db for n in eligible}
            allocs, self.cursor = schedule_subframe(
                eligible,
                snrs,
                self.frame,
                bandwidth_hz=self.bandwidth_hz,
                cursor=self.cursor,
                subframe_index=now // sub,
                direction=self.direction,
            )
            for alloc in allocs:
                q = self.queues[alloc.node_id]
                fragments = q.drain(alloc.tbs_bits)
                if not q.has_backlog:
                    del self.queues[alloc.node_id]
                if self.frame.scheduler_kind == RB_ROUND_ROBIN:
                    arrival = now + sub
                else:
                    arrival = now + alloc.resources.stop * self.frame.symbol_ns
                if fragments:
                    self.sim.schedule(
                        arrival, lambda f=fragments, t=arrival: self.deliver(f, t)
                    )
                self._trace(alloc, now)
        if self.queues:
            self._armed = True
            self.sim.schedule(now + sub, self._tick)

    def _trace(self, alloc, now: int) -> None:
        if alloc.node_id == self.trace_node:
            self.snr_samples.append(
                ch.SnrSample(
                    now, self.label_of(alloc.node_id), self.direction,
                    self.links[alloc.node_id].snr_db,
                )
            )
        if self.alloc_samples is not None:
            unit = "rb" if self.frame.scheduler_kind == RB_ROUND_ROBIN else "sym"
            self.alloc_samples.append(
                AllocSample(
                    alloc.subframe_index,
                    self.label_of(alloc.node_id),
                    self.direction,
                    f"{unit}:{alloc.resources.start}-{alloc.resources.stop - 1}",
                    alloc.tbs_bits,
                )
            )


def _build_link(
    cfg: ScenarioConfig,
    streams: StreamFactory,
    role: int,
    index: int,
    distance: float,
    direction: str,
) -> _RadioLink:
    los = ch.draw_los(distance, streams.stream(role, index, "los"))
    state = ch.LinkState(distance_m=distance, los=los)
    shadow_stream = streams.stream(role, index, "shadow")
    ch.init_shadowing(state, cfg.channel, shadow_stream)
    budget = ch.snr_db(
        ch.LinkState(distance_m=distance, los=los, shadow_db=0.0), cfg.channel, direction
    )
    return _RadioLink(state, budget, shadow_stream)


def run_single(
    cfg: ScenarioConfig,
    n_pairs: int,
    run_index: int,
    *,
    deployment: Deployment | None = None,
    trace_snr: bool = False,
    trace_alloc: bool = False,
) -> RunResult:
    """Simulate one (pair count, run index) point and return its records."""
    # Streams are scoped by run index only: growing the pair count must leave
    # the draws of already-present nodes untouched, so latency-vs-pairs curves
    # vary only through genuine topology effects.
    streams = StreamFactory(cfg.root_seed, run_index)
    if deployment is None:
        deployment = place_random(n_pairs, cfg.plane_side_m, streams)

    sim = Simulator()
    counters = RunCounters()
    live: set[int] = set()  # packets created but neither delivered nor dropped
    packet_ids = itertools.count()

    ul_links = {
        i: _build_link(cfg, streams, ROLE_DRN, i, distance_3d(pos, deployment.enb), ch.UL)
        for i, pos in enumerate(deployment.drns)
    }
    dl_links = {
        i: _build_link(cfg, streams, ROLE_LCO, i, distance_3d(pos, deployment.enb), ch.DL)
        for i, pos in enumerate(deployment.lcos)
    }

    if cfg.channel.shadowing_enabled:
        period = cfg.channel.shadow_update_period_ns

        def shadow_step(link: _RadioLink) -> None:
            ch.update_shadowing(link.state, cfg.channel, link.stream)
            link.refresh()
            sim.schedule_in(period, lambda l=link: shadow_step(l))

        for link in list(ul_links.values()) + list(dl_links.values()):
            sim.schedule(period, lambda l=link: shadow_step(l))

    ec = EcForwarder(cfg.ec)
    ul_reasm = Reassembler()
    dl_reasm = Reassembler()
    origin_drn: dict[int, int] = {}  # packet id -> DRN/LCO pair index

    def drn_label(i: int) -> str:
        return f"DRN{i + 1}"

    def lco_label(i: int) -> str:
        return f"LCO{i + 1}"

    def on_dl_fragments(fragments: list[Fragment], now: int) -> None:
        for frag in fragments:
            packet = dl_reasm.feed(frag)
            if packet is None:
                continue
            packet.log_hop(packet.dst, now)
            pair = origin_drn.pop(packet.packet_id)
            record = co_app_receive(packet, now, cfg.epsilon_ns, drn_id=pair, lco_id=pair)
            counters.records.append(record)
            counters.delivered += 1
            live.discard(packet.packet_id)

    dl_cell = _Cell(
        sim, cfg, ch.DL, dl_links, on_dl_fragments, lco_label,
        trace_node=0 if trace_snr else None,
    )

    def drop(packet_id: int) -> None:
        counters.dropped += 1
        live.discard(packet_id)
        origin_drn.pop(packet_id, None)

    def ec_depart(packet: Packet) -> None:
        ec.departed()
        pair = origin_drn[packet.packet_id]
        dl_packet = Packet(
            packet_id=packet.packet_id,
            src="EC",
            dst=lco_label(pair),
            payload_bytes=packet.payload_bytes,
            created_at=packet.created_at,
            hop_log=packet.hop_log,
        )

        def enqueue_dl() -> None:
            if not dl_cell.enqueue(pair, dl_packet):
                drop(dl_packet.packet_id)

        if cfg.rco_core_delay_ns:
            sim.schedule_in(cfg.rco_core_delay_ns, enqueue_dl)
        else:
            enqueue_dl()

    def on_ul_fragments(fragments: list[Fragment], now: int) -> None:
        for frag in fragments:
            packet = ul_reasm.feed(frag)
            if packet is None:
                continue
            packet.log_hop("eNB", now)
            departure = ec.offer(now)
            if departure is None:
                drop(packet.packet_id)
                continue
            sim.schedule(departure, lambda p=packet: ec_depart(p))

    ul_cell = _Cell(
        sim, cfg, ch.UL, ul_links, on_ul_fragments, drn_label,
        trace_node=0 if trace_snr else None,
    )
    if trace_alloc:
        ul_cell.alloc_samples = []
        dl_cell.alloc_samples = []

    def tsn_event(drn_index: int, rfid_rng: np.random.Generator | None) -> None:
        now = sim.now()
        if cfg.t_rfid_max_ns is not None and rfid_rng is not None:
            t_rfid = int(rfid_rng.integers(cfg.t_rfid_ns, cfg.t_rfid_max_ns + 1))
        else:
            t_rfid = cfg.t_rfid_ns
        ingress = rfid_read(now, t_rfid)
        created_at = now if cfg.tag_at == TAG_AT_TSN_EVENT else ingress
        packet = Packet(
            packet_id=next(packet_ids),
            src=drn_label(drn_index),
            dst=lco_label(drn_index),
            payload_bytes=cfg.traffic.payload_bytes,
            created_at=created_at,
        )
        counters.sent += 1
        live.add(packet.packet_id)
        origin_drn[packet.packet_id] = drn_index

        def ingress_at_drn() -> None:
            packet.log_hop(packet.src, sim.now())
            if not ul_cell.enqueue(drn_index, packet):
                drop(packet.packet_id)

        sim.schedule(ingress, ingress_at_drn)

    for i in range(n_pairs):
        traffic_rng = streams.stream(ROLE_DRN, i, "traffic")
        rfid_rng = streams.stream(ROLE_DRN, i, "rfid") if cfg.t_rfid_max_ns else None
        for at in send_times(cfg.traffic, cfg.sim_duration_ns, traffic_rng):
            sim.schedule(at, lambda d=i, r=rfid_rng: tsn_event(d, r))

    stats = sim.run_until(cfg.sim_duration_ns)

    in_flight = len(live)
    if counters.in_flight != in_flight:
        raise AssertionError(
            f"conservation broken: sent={counters.sent} delivered={counters.delivered} "
            f"dropped={counters.dropped} live={in_flight}"
        )

    debug = {
        drn_label(i): LinkDebug(
            l.state.distance_m, l.state.los, l.snr_db, l.mcs.index if l.mcs else 0
        )
        for i, l in ul_links.items()
    }
    debug.update(
        {
            lco_label(i): LinkDebug(
                l.state.distance_m, l.state.los, l.snr_db, l.mcs.index if l.mcs else 0
            )
            for i, l in dl_links.items()
        }
    )

    return RunResult(
        n_pairs=n_pairs,
        run_index=run_index,
        counters=counters,
        in_flight=in_flight,
        final_time=stats.final_time,
        snr_samples=ul_cell.snr_samples + dl_cell.snr_samples,
        alloc_samples=(ul_cell.alloc_samples or []) + (dl_cell.alloc_samples or []),
        link_debug=debug,
    )
