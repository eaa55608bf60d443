"""Histogram-shifting payload in the difference images of HH, HL and LH.

Coefficients in each band row are paired as columns ``(2j, 2j+1)``; the
difference is ``band[:, 2j+1] - band[:, 2j]`` and only the second member of
a pair is ever modified. A trailing odd column is left alone.
"""

from __future__ import annotations

import numpy as np

from .errors import InsufficientCapacity, MalformedOverhead
from .iwt import Subbands
from .overhead import LENGTH_BITS, bits_to_int

SCAN_ORDER = ("hh", "hl", "lh")


def _pairs(band: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    k = band.shape[1] // 2
    return band[:, 0 : 2 * k : 2], band[:, 1 : 2 * k : 2]


def difference_image(band) -> np.ndarray:
    base, moved = _pairs(np.asarray(band, dtype=np.int64))
    return moved - base


def _map_bands(bands: Subbands, fn) -> Subbands:
    out = bands.copy()
    for name in SCAN_ORDER:
        band = getattr(out, name)
        base, moved = _pairs(band)
        moved += fn(moved - base)  # moved is a view into band
    return out


def empty_bins(bands: Subbands) -> Subbands:
    """Push every |d| >= 2 outward by one so the +/-2 bins are empty."""
    return _map_bands(bands, lambda d: (d >= 2).astype(np.int64) - (d <= -2))


def recover_bands(bands: Subbands) -> Subbands:
    """Undo payload (+/-2 -> +/-1) and bin emptying (|d| >= 3 -> |d| - 1) in one pass."""
    return _map_bands(bands, lambda d: (d <= -2).astype(np.int64) - (d >= 2))


def capacity(bands: Subbands) -> int:
    return sum(int(np.count_nonzero(np.abs(difference_image(getattr(bands, n))) == 1)) for n in SCAN_ORDER)


def embed_bits(bands: Subbands, payload) -> Subbands:
    payload = np.asarray(payload, dtype=np.int64).ravel()
    cap = capacity(bands)
    if payload.size > cap:
        raise InsufficientCapacity(cap, int(payload.size))
    out = bands.copy()
    pos = 0
    for name in SCAN_ORDER:
        if pos == payload.size:
            break
        base, moved = _pairs(getattr(out, name))
        d = moved - base
        rows, cols = np.nonzero(np.abs(d) == 1)  # row-major
        take = min(rows.size, payload.size - pos)
        rows, cols = rows[:take], cols[:take]
        moved[rows, cols] += payload[pos : pos + take] * d[rows, cols]
        pos += take
    return out


def carrier_bits(bands: Subbands) -> np.ndarray:
    """All bits readable from the carriers, in scan order (|d|=1 -> 0, |d|=2 -> 1)."""
    chunks = []
    for name in SCAN_ORDER:
        d = np.abs(difference_image(getattr(bands, name)))
        sel = d[(d == 1) | (d == 2)]
        chunks.append((sel == 2).astype(np.uint8))
    return np.concatenate(chunks)


def extract_bits(bands: Subbands) -> np.ndarray:
    """Read the length-prefixed overhead stream back out of the carriers."""
    bits = carrier_bits(bands)
    if bits.size < LENGTH_BITS:
        raise MalformedOverhead(f"only {bits.size} carrier bits, cannot read the length field")
    total = LENGTH_BITS + bits_to_int(bits[:LENGTH_BITS])
    if bits.size < total:
        raise MalformedOverhead(f"declared {total} bits but only {bits.size} carriers present")
    return bits[:total]
