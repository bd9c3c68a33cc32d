import pytest
from hypothesis import given
from hypothesis import strategies as st

from rtcsim.transport import (
    HEADER_BYTES,
    Fragment,
    ModelViolationError,
    Packet,
    Reassembler,
    make_datagram,
    segment,
)


def test_header_overhead_is_ipv6_plus_udp():
    assert HEADER_BYTES == 48


@pytest.mark.parametrize(
    "payload,total", [(1024, 1072), (0, 48), (5120, 5168), (512, 560)]
)
def test_datagram_wire_size(payload, total):
    pkt = make_datagram(payload, "DRN1", "LCO1", now=7, packet_id=1)
    assert pkt.wire_bytes == total
    assert pkt.created_at == 7


def test_negative_payload_rejected():
    with pytest.raises(ValueError):
        make_datagram(-1, "a", "b", 0, 0)


def test_segment_1072_bytes_into_733_bit_grants():
    pkt = make_datagram(1024, "a", "b", 0, 0)
    assert pkt.wire_bits == 8576
    n_grants = -(-8576 // 733)  # ceiling division oracle
    frags = segment(pkt, [733] * n_grants)
    assert len(frags) == n_grants == 12
    assert [f.size_bits for f in frags] == [733] * 11 + [513]
    assert [f.index for f in frags] == list(range(12))
    assert [f.is_last for f in frags] == [False] * 11 + [True]


def test_segment_single_big_grant():
    pkt = make_datagram(1024, "a", "b", 0, 0)
    frags = segment(pkt, [16_664])
    assert len(frags) == 1
    assert frags[0].size_bits == 8576 and frags[0].is_last


def test_zero_bit_packet_yields_empty_terminal_fragment():
    pkt = Packet(0, "a", "b", payload_bytes=0, created_at=3, header_bytes=0)
    frags = segment(pkt, [733])
    assert len(frags) == 1
    assert frags[0].size_bits == 0 and frags[0].is_last
    assert frags[0].packet.created_at == 3


def test_insufficient_grants_raise():
    pkt = make_datagram(1024, "a", "b", 0, 0)
    with pytest.raises(ValueError):
        segment(pkt, [733] * 11)
    with pytest.raises(ValueError):
        segment(pkt, [0])


def test_reassembly_in_order():
    pkt = make_datagram(1024, "a", "b", 0, 0)
    frags = segment(pkt, [733] * 12)
    r = Reassembler()
    assert all(r.feed(f) is None for f in frags[:-1])
    assert r.feed(frags[-1]) is pkt
    assert r.pending == 0


def test_single_fragment_immediate_delivery():
    pkt = make_datagram(64, "a", "b", 0, 0)
    r = Reassembler()
    assert r.feed(segment(pkt, [10**6])[0]) is pkt


def test_missing_last_fragment_stays_pending():
    pkt = make_datagram(1024, "a", "b", 0, 0)
    frags = segment(pkt, [733] * 12)
    r = Reassembler()
    for f in frags[:-1]:
        r.feed(f)
    assert r.pending == 1  # in flight, not delivered


def test_duplicate_fragment_is_model_violation():
    pkt = make_datagram(1024, "a", "b", 0, 0)
    frags = segment(pkt, [733] * 12)
    r = Reassembler()
    r.feed(frags[0])
    with pytest.raises(ModelViolationError):
        r.feed(frags[0])


def test_out_of_order_fragment_is_model_violation():
    pkt = make_datagram(1024, "a", "b", 0, 0)
    frags = segment(pkt, [733] * 12)
    r = Reassembler()
    with pytest.raises(ModelViolationError):
        r.feed(frags[1])


@given(
    payload=st.integers(min_value=0, max_value=9000),
    grants=st.lists(st.integers(min_value=1, max_value=20_000), min_size=1, max_size=200),
    created_at=st.integers(min_value=0, max_value=10**12),
)
def test_segmentation_reassembly_round_trip(payload, grants, created_at):
    pkt = make_datagram(payload, "src", "dst", created_at, packet_id=99)
    if sum(grants) < pkt.wire_bits:
        with pytest.raises(ValueError):
            segment(pkt, grants)
        return
    frags = segment(pkt, grants)
    assert sum(f.size_bits for f in frags) == 8 * (payload + HEADER_BYTES)
    assert [f.index for f in frags] == list(range(len(frags)))
    assert sum(1 for f in frags if f.is_last) == 1

    r = Reassembler()
    delivered = None
    for f in frags:
        out = r.feed(f)
        if out is not None:
            assert f.is_last
            delivered = out
    assert delivered is pkt
    assert delivered.created_at == created_at
    assert delivered.wire_bytes == payload + HEADER_BYTES


def test_fragment_is_value_like():
    pkt = make_datagram(10, "a", "b", 0, 0)
    f = Fragment(pkt, 0, 80, True)
    assert f.packet.payload_bytes == 10
