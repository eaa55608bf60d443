"""Wire format for the layer-2 payload (book-keeping data + location map).

All fields are MSB-first::

    length   32  number of bits after this field
    S         8  shift threshold
    p        32  number of shifted pixels
    p x (row 16, col 16)
    flag      1  1 = location map run-length coded, 0 = raw
    L        ..  location map, column-major

Runs are coded as (bit value: 1, run length - 1: 8). See docs/overhead_format.md.
"""

from __future__ import annotations

import numpy as np

from .errors import CoordinateOverflow, MalformedOverhead
from .layer1 import MAX_THRESHOLD, BookKeeping

LENGTH_BITS = 32
THRESHOLD_BITS = 8
COUNT_BITS = 32
COORD_BITS = 16
RUN_BITS = 8
MAX_RUN = 1 << RUN_BITS


def int_to_bits(value: int, width: int) -> np.ndarray:
    if not 0 <= value < (1 << width):
        raise ValueError(f"{value} does not fit in {width} bits")
    shifts = np.arange(width - 1, -1, -1, dtype=np.uint64)
    return ((np.uint64(value) >> shifts) & np.uint64(1)).astype(np.uint8)


def bits_to_int(bits) -> int:
    out = 0
    for b in np.asarray(bits, dtype=np.uint8):
        out = (out << 1) | int(b)
    return out


def _ints_to_bits(values: np.ndarray, width: int) -> np.ndarray:
    values = np.asarray(values, dtype=np.int64).reshape(-1, 1)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return ((values >> shifts) & 1).astype(np.uint8).ravel()


def _bits_to_ints(bits: np.ndarray, width: int) -> np.ndarray:
    weights = 1 << np.arange(width - 1, -1, -1, dtype=np.int64)
    return bits.reshape(-1, width).astype(np.int64) @ weights


def rle_encode(bits) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint8).ravel()
    if bits.size == 0:
        return np.zeros(0, dtype=np.uint8)
    edges = np.flatnonzero(np.diff(bits)) + 1
    starts = np.concatenate(([0], edges))
    lengths = np.diff(np.concatenate((starts, [bits.size])))
    values, runs = [], []
    for start, length in zip(starts, lengths):
        while length > 0:
            step = min(length, MAX_RUN)
            values.append(bits[start])
            runs.append(step - 1)
            length -= step
    fields = np.empty((len(runs), 1 + RUN_BITS), dtype=np.uint8)
    fields[:, 0] = values
    fields[:, 1:] = _ints_to_bits(np.array(runs), RUN_BITS).reshape(-1, RUN_BITS)
    return fields.ravel()


def rle_decode(bits, expected_len: int) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint8).ravel()
    if bits.size % (1 + RUN_BITS):
        raise MalformedOverhead(f"RLE section of {bits.size} bits is not a whole number of runs")
    fields = bits.reshape(-1, 1 + RUN_BITS)
    lengths = _bits_to_ints(fields[:, 1:], RUN_BITS) + 1
    if int(lengths.sum()) != expected_len:
        raise MalformedOverhead(f"RLE decodes to {int(lengths.sum())} bits, expected {expected_len}")
    return np.repeat(fields[:, 0], lengths)


def encode_overhead(bk: BookKeeping, lmap) -> np.ndarray:
    if not 1 <= bk.threshold <= MAX_THRESHOLD:
        raise MalformedOverhead(f"threshold {bk.threshold} outside [1, {MAX_THRESHOLD}]")
    coords = bk.shifted
    if coords.size and (coords.min() < 0 or coords.max() >= 1 << COORD_BITS):
        raise CoordinateOverflow(f"coordinates must fit in {COORD_BITS} bits")
    raw = np.asarray(lmap, dtype=np.uint8).flatten(order="F")
    packed = rle_encode(raw)
    flag, lbits = (1, packed) if packed.size < raw.size else (0, raw)
    body = np.concatenate(
        (
            int_to_bits(bk.threshold, THRESHOLD_BITS),
            int_to_bits(bk.count, COUNT_BITS),
            _ints_to_bits(coords, COORD_BITS),
            np.array([flag], dtype=np.uint8),
            lbits,
        )
    )
    return np.concatenate((int_to_bits(body.size, LENGTH_BITS), body))


def decode_overhead(bits, grid: tuple[int, int]) -> tuple[BookKeeping, np.ndarray]:
    bits = np.asarray(bits, dtype=np.uint8).ravel()
    if bits.size < LENGTH_BITS:
        raise MalformedOverhead("stream shorter than its length field")
    declared = bits_to_int(bits[:LENGTH_BITS])
    body = bits[LENGTH_BITS:]
    if body.size != declared:
        raise MalformedOverhead(f"length field says {declared} bits, stream carries {body.size}")
    head = THRESHOLD_BITS + COUNT_BITS
    if body.size < head + 1:
        raise MalformedOverhead("stream too short for the fixed header")
    S = bits_to_int(body[:THRESHOLD_BITS])
    if not 1 <= S <= MAX_THRESHOLD:
        raise MalformedOverhead(f"threshold {S} outside [1, {MAX_THRESHOLD}]")
    p = bits_to_int(body[THRESHOLD_BITS:head])
    coord_end = head + 2 * COORD_BITS * p
    if body.size < coord_end + 1:
        raise MalformedOverhead(f"stream too short for {p} coordinates")
    coords = _bits_to_ints(body[head:coord_end], COORD_BITS).reshape(-1, 2)
    flag = int(body[coord_end])
    lbits = body[coord_end + 1 :]
    rows, cols = grid
    n = rows * cols
    if flag:
        flat = rle_decode(lbits, n)
    elif lbits.size != n:
        raise MalformedOverhead(f"raw location map has {lbits.size} bits, grid needs {n}")
    else:
        flat = lbits
    return BookKeeping(S, coords), flat.reshape((rows, cols), order="F").astype(np.uint8)


def pack_bits(bits) -> bytes:
    """MSB-first byte packing, zero-padded to a whole byte."""
    return np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes()


def unpack_stream(data: bytes) -> np.ndarray:
    """Inverse of :func:`pack_bits` for a length-prefixed stream (drops the padding)."""
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    if bits.size < LENGTH_BITS:
        raise MalformedOverhead("not enough bytes for the length field")
    total = LENGTH_BITS + bits_to_int(bits[:LENGTH_BITS])
    if total > bits.size:
        raise MalformedOverhead("stream truncated")
    return bits[:total]
