import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rtcsim.apps import (
    EcForwarder,
    EcServerParams,
    TrafficProfile,
    co_app_receive,
    deadline_fraction,
    send_times,
)
from rtcsim.core import NS_PER_MS, NS_PER_S
from rtcsim.transport import make_datagram


def _periodic(period_ms=100, jitter_ms=100, payload=1024):
    return TrafficProfile(
        mode="periodic",
        period_ns=period_ms * NS_PER_MS,
        payload_bytes=payload,
        start_jitter_ns=jitter_ms * NS_PER_MS,
    )


def test_periodic_send_count():
    rng = np.random.default_rng(0)
    times = send_times(_periodic(), 10 * NS_PER_S, rng)
    assert len(times) == 100
    assert 0 <= times[0] < 100 * NS_PER_MS
    deltas = {b - a for a, b in zip(times, times[1:])}
    assert deltas == {100 * NS_PER_MS}


def test_one_shot_sends_once():
    profile = TrafficProfile(
        mode="one_shot", period_ns=NS_PER_MS, payload_bytes=64, start_jitter_ns=0
    )
    assert send_times(profile, NS_PER_S, np.random.default_rng(0)) == [0]


def test_aggregate_rate_scales_with_senders():
    # 120 senders at one packet per 100 ms is 1200 packets per second.
    total = sum(
        len(send_times(_periodic(), NS_PER_S, np.random.default_rng(i)))
        for i in range(120)
    )
    assert total == 120 * 10


def test_bad_profile_rejected():
    with pytest.raises(ValueError):
        TrafficProfile(mode="burst", period_ns=1, payload_bytes=1, start_jitter_ns=0)
    with pytest.raises(ValueError):
        TrafficProfile(mode="periodic", period_ns=0, payload_bytes=1, start_jitter_ns=0)


def test_ec_zero_service_forwards_immediately():
    ec = EcForwarder(EcServerParams(service_time_ns=0))
    assert ec.offer(5 * NS_PER_MS) == 5 * NS_PER_MS


def test_ec_fifo_recurrence():
    # Two simultaneous arrivals at t with 1 ms service: departures t+1, t+2.
    ec = EcForwarder(EcServerParams(service_time_ns=NS_PER_MS))
    t = 7 * NS_PER_MS
    assert ec.offer(t) == t + NS_PER_MS
    assert ec.offer(t) == t + 2 * NS_PER_MS


def test_ec_overflow_drops():
    ec = EcForwarder(EcServerParams(service_time_ns=NS_PER_MS, queue_capacity=2))
    assert ec.offer(0) is not None
    assert ec.offer(0) is not None
    assert ec.offer(0) is None
    assert ec.dropped == 1
    ec.departed()
    assert ec.offer(0) is not None


@given(st.lists(st.integers(min_value=0, max_value=10**9), min_size=1, max_size=200))
def test_ec_departures_non_decreasing(gaps):
    ec = EcForwarder(EcServerParams(service_time_ns=250_000, queue_capacity=10**9))
    now = 0
    last = 0
    for gap in gaps:
        now += gap
        dep = ec.offer(now)
        assert dep >= now
        assert dep >= last
        last = dep


def test_co_app_receive_deadline():
    eps = 50 * NS_PER_MS
    pkt = make_datagram(1024, "DRN1", "LCO1", now=0, packet_id=0)
    rec = co_app_receive(pkt, int(14.4 * NS_PER_MS), eps, drn_id=0, lco_id=0)
    assert rec.td_ns == int(14.4 * NS_PER_MS)
    assert rec.met_deadline

    rec = co_app_receive(pkt, int(713.55 * NS_PER_MS), eps, drn_id=0, lco_id=0)
    assert not rec.met_deadline

    rec = co_app_receive(pkt, 0, eps, drn_id=0, lco_id=0)
    assert rec.td_ns == 0 and rec.met_deadline


def test_deadline_fraction_conventions():
    eps = 50 * NS_PER_MS
    pkt = make_datagram(8, "a", "b", 0, 0)
    met = co_app_receive(pkt, 10 * NS_PER_MS, eps, 0, 0)
    missed = co_app_receive(pkt, 90 * NS_PER_MS, eps, 0, 0)
    assert deadline_fraction([met, met], packets_sent=2) == 1.0
    assert deadline_fraction([met, met, met, missed], packets_sent=4) == 0.75
    assert deadline_fraction([], packets_sent=0) == 1.0
    assert deadline_fraction([], packets_sent=9) == 0.0
