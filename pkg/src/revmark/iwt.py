"""Integer-to-integer Haar transform built from lifting steps.

Forward pair step: ``d = odd - even``, ``s = even + floor(d / 2)``. The
inverse mirrors it exactly, so every round trip is lossless on integers.
The 2-D transform runs rows first, then columns; the inverse runs columns
first, then rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, LengthMismatch, OddDimensions, OddLength


@dataclass(eq=False)
class Subbands:
    """One decomposition level. ``hl`` is high-pass along rows, low-pass along columns."""

    ll: np.ndarray
    hl: np.ndarray
    lh: np.ndarray
    hh: np.ndarray

    def __post_init__(self):
        shapes = {np.shape(b) for b in (self.ll, self.hl, self.lh, self.hh)}
        if len(shapes) != 1:
            raise DimensionMismatch(f"sub-band shapes differ: {sorted(shapes)}")

    @property
    def shape(self) -> tuple[int, int]:
        return np.shape(self.ll)

    def copy(self) -> Subbands:
        return Subbands(*(np.array(b, dtype=np.int64) for b in (self.ll, self.hl, self.lh, self.hh)))

    def __eq__(self, other):
        if not isinstance(other, Subbands):
            return NotImplemented
        return all(
            np.array_equal(x, y)
            for x, y in zip((self.ll, self.hl, self.lh, self.hh), (other.ll, other.hl, other.lh, other.hh))
        )


def _lift(even: np.ndarray, odd: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    detail = odd - even
    return even + (detail >> 1), detail


def _unlift(approx: np.ndarray, detail: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    even = approx - (detail >> 1)
    return even, even + detail


def haar_forward_1d(seq) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(seq, dtype=np.int64)
    if x.ndim != 1 or x.size % 2:
        raise OddLength(f"need an even-length sequence, got {x.size}")
    return _lift(x[0::2], x[1::2])


def haar_inverse_1d(approx, detail) -> np.ndarray:
    s = np.asarray(approx, dtype=np.int64)
    d = np.asarray(detail, dtype=np.int64)
    if s.shape != d.shape:
        raise LengthMismatch(f"approx has {s.size} entries, detail has {d.size}")
    out = np.empty(2 * s.size, dtype=np.int64)
    out[0::2], out[1::2] = _unlift(s, d)
    return out


def decompose_2d(img) -> Subbands:
    """Single-level 2-D decomposition of an even-sized integer matrix (or GrayImage)."""
    x = np.asarray(getattr(img, "pixels", img), dtype=np.int64)
    if x.ndim != 2 or x.shape[0] % 2 or x.shape[1] % 2:
        raise OddDimensions(f"both dimensions must be even, got {x.shape}")
    low, high = _lift(x[:, 0::2], x[:, 1::2])
    ll, lh = _lift(low[0::2], low[1::2])
    hl, hh = _lift(high[0::2], high[1::2])
    return Subbands(ll, hl, lh, hh)


def reconstruct_2d(sb: Subbands) -> np.ndarray:
    """Exact inverse of :func:`decompose_2d`; returns a signed int64 matrix."""
    bands = [np.asarray(b, dtype=np.int64) for b in (sb.ll, sb.hl, sb.lh, sb.hh)]
    if len({b.shape for b in bands}) != 1:
        raise DimensionMismatch("sub-band shapes differ")
    ll, hl, lh, hh = bands
    rows, cols = ll.shape
    low = np.empty((2 * rows, cols), dtype=np.int64)
    high = np.empty((2 * rows, cols), dtype=np.int64)
    low[0::2], low[1::2] = _unlift(ll, lh)
    high[0::2], high[1::2] = _unlift(hl, hh)
    out = np.empty((2 * rows, 2 * cols), dtype=np.int64)
    out[:, 0::2], out[:, 1::2] = _unlift(low, high)
    return out
