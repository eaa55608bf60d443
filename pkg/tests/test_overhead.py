from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from revmark.errors import CoordinateOverflow, MalformedOverhead
from revmark.layer1 import BookKeeping
from revmark.overhead import (
    decode_overhead,
    encode_overhead,
    int_to_bits,
    pack_bits,
    rle_decode,
    rle_encode,
    unpack_stream,
)

GOLDEN = Path(__file__).parent / "data" / "overhead_45bit.bin"


def bits(s):
    return [int(ch) for ch in s.replace(" ", "")]


# hand-assembled: S=2 | p=0 | flag 0 | 2x2 zero map
EXAMPLE_BODY = bits("00000010") + [0] * 32 + [0] + [0, 0, 0, 0]
EXAMPLE = [0] * 26 + bits("101101") + EXAMPLE_BODY  # 32-bit length 45


def test_worked_example():
    stream = encode_overhead(BookKeeping(2), np.zeros((2, 2), dtype=np.uint8))
    assert len(EXAMPLE_BODY) == 45
    assert stream.tolist() == EXAMPLE
    bk, lmap = decode_overhead(np.array(EXAMPLE), (2, 2))
    assert bk == BookKeeping(2) and lmap.tolist() == [[0, 0], [0, 0]]


def test_golden_file():
    stream = encode_overhead(BookKeeping(2), np.zeros((2, 2), dtype=np.uint8))
    assert pack_bits(stream) == GOLDEN.read_bytes()
    assert unpack_stream(GOLDEN.read_bytes()).tolist() == EXAMPLE


def test_coordinate_fields():
    stream = encode_overhead(BookKeeping(2, [[3, 7]]), np.zeros((2, 2), dtype=np.uint8))
    body = stream[32:]
    assert body[8:40].tolist() == int_to_bits(1, 32).tolist()
    assert body[40:56].tolist() == bits("0000 0000 0000 0011")
    assert body[56:72].tolist() == bits("0000 0000 0000 0111")


def test_coordinate_overflow():
    with pytest.raises(CoordinateOverflow):
        encode_overhead(BookKeeping(2, [[65536, 0]]), np.zeros((1, 1)))


def test_location_map_is_column_major():
    lmap = np.array([[1, 0, 0], [1, 1, 0]], dtype=np.uint8)
    stream = encode_overhead(BookKeeping(1), lmap)
    assert stream[-6:].tolist() == [1, 1, 0, 1, 0, 0]


def test_rle_examples():
    packed = rle_encode(np.zeros(300, dtype=np.uint8))
    assert packed.tolist() == [0] + bits("11111111") + [0] + bits("00101011")
    assert rle_decode(packed, 300).tolist() == [0] * 300
    assert rle_encode([0, 1, 0, 1]).size == 36
    assert rle_encode([]).size == 0


def test_rle_decode_errors():
    with pytest.raises(MalformedOverhead):
        rle_decode(rle_encode([1, 1, 1]), 4)
    with pytest.raises(MalformedOverhead):
        rle_decode([0, 1, 1], 3)


def test_rle_chosen_when_shorter():
    lmap = np.zeros((40, 40), dtype=np.uint8)
    stream = encode_overhead(BookKeeping(4), lmap)
    assert stream[32 + 8 + 32] == 1  # flag
    assert stream.size == 32 + 8 + 32 + 1 + 7 * 9  # 1600 zeros -> 7 runs
    assert decode_overhead(stream, (40, 40))[1].tolist() == lmap.tolist()


def test_truncated_stream():
    with pytest.raises(MalformedOverhead):
        decode_overhead(np.array(EXAMPLE[:-1]), (2, 2))
    with pytest.raises(MalformedOverhead):
        decode_overhead(np.array(EXAMPLE[:20]), (2, 2))


def test_bad_rle_payload():
    stream = encode_overhead(BookKeeping(4), np.zeros((40, 40), dtype=np.uint8))
    with pytest.raises(MalformedOverhead):
        decode_overhead(stream, (40, 41))


def test_bad_threshold_and_grid():
    bad = list(EXAMPLE)
    bad[32:40] = [0] * 8  # S = 0
    with pytest.raises(MalformedOverhead):
        decode_overhead(np.array(bad), (2, 2))
    with pytest.raises(MalformedOverhead):
        decode_overhead(np.array(EXAMPLE), (2, 3))


@st.composite
def overhead_inputs(draw):
    rows, cols = draw(st.integers(1, 30)), draw(st.integers(1, 30))
    dense = draw(st.booleans())
    elems = st.integers(0, 1) if dense else st.sampled_from([0] * 15 + [1])
    lmap = draw(arrays(np.uint8, (rows, cols), elements=elems))
    coords = draw(st.lists(st.tuples(st.integers(0, 65535), st.integers(0, 65535)), max_size=20))
    return BookKeeping(draw(st.integers(1, 63)), np.array(coords).reshape(-1, 2)), lmap


@given(overhead_inputs())
def test_round_trip(args):
    bk, lmap = args
    stream = encode_overhead(bk, lmap)
    got_bk, got_lmap = decode_overhead(stream, lmap.shape)
    assert got_bk == bk and np.array_equal(got_lmap, lmap)
    raw_len = 32 + 8 + 32 + 32 * bk.count + 1 + lmap.size
    assert stream.size <= raw_len
    assert unpack_stream(pack_bits(stream)).tolist() == stream.tolist()


@given(arrays(np.uint8, st.integers(0, 2000), elements=st.integers(0, 1)))
def test_rle_round_trip(x):
    assert np.array_equal(rle_decode(rle_encode(x), x.size), x)
