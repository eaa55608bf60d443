"""Spatial layer: range narrowing, keyed watermark plane, block-parity LSB mark.

Every full ``m x m`` block carries one watermark bit as the parity of its
pixel sum. When the parity disagrees with the bit, the centre pixel is
incremented and the block is recorded in the location map.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import PEAK, GrayImage
from .errors import (
    AmbiguousShiftDirection,
    CentreUnderflow,
    EmptyLogo,
    GridMismatch,
    InvalidConfig,
    ThresholdOutOfRange,
)

MAX_THRESHOLD = 63
MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


@dataclass(eq=False)
class BookKeeping:
    """Shift threshold plus the raster-ordered (row, col) list of shifted pixels."""

    threshold: int
    shifted: np.ndarray = field(default_factory=lambda: np.zeros((0, 2), dtype=np.int64))

    def __post_init__(self):
        self.shifted = np.asarray(self.shifted, dtype=np.int64).reshape(-1, 2)

    @property
    def count(self) -> int:
        return len(self.shifted)

    def __eq__(self, other):
        if not isinstance(other, BookKeeping):
            return NotImplemented
        return self.threshold == other.threshold and np.array_equal(self.shifted, other.shifted)

    def __repr__(self):
        return f"BookKeeping(threshold={self.threshold}, shifted={self.count} px)"


def check_block_size(m: int) -> None:
    if m < 3 or m % 2 == 0:
        raise InvalidConfig(f"block size must be odd and >= 3, got {m}")


def block_grid(shape: tuple[int, int], m: int) -> tuple[int, int]:
    return shape[0] // m, shape[1] // m


def narrow_range(img: GrayImage, S: int) -> tuple[GrayImage, BookKeeping]:
    if not 1 <= S <= MAX_THRESHOLD:
        raise ThresholdOutOfRange(f"threshold {S} outside [1, {MAX_THRESHOLD}]")
    px = img.pixels.astype(np.int64)
    low = px <= S
    high = px >= PEAK - S
    out = px + S * low - S * high
    coords = np.argwhere(low | high)  # row-major scan order
    return GrayImage(out), BookKeeping(S, coords)


def restore_range(img: GrayImage, bk: BookKeeping) -> GrayImage:
    S = bk.threshold
    if not 1 <= S <= MAX_THRESHOLD:
        raise ThresholdOutOfRange(f"threshold {S} outside [1, {MAX_THRESHOLD}]")
    px = img.pixels.astype(np.int64)
    if bk.count == 0:
        return GrayImage(px)
    rows, cols = bk.shifted[:, 0], bk.shifted[:, 1]
    if rows.max() >= img.height or cols.max() >= img.width or bk.shifted.min() < 0:
        raise AmbiguousShiftDirection("recorded coordinate outside the image")
    v = px[rows, cols]
    up = (v >= S) & (v <= 2 * S)  # was shifted up from [0, S]
    down = (v >= PEAK - 2 * S) & (v <= PEAK - S)
    bad = ~(up | down)
    if bad.any():
        k = int(np.argmax(bad))
        raise AmbiguousShiftDirection(
            f"pixel ({rows[k]}, {cols[k]}) = {v[k]} lies in neither shift band for S={S}"
        )
    px[rows, cols] = np.where(up, v - S, v + S)
    return GrayImage(px)


def tile_logo(logo, grid: tuple[int, int]) -> np.ndarray:
    logo = np.asarray(logo, dtype=np.uint8)
    if logo.ndim != 2 or logo.size == 0:
        raise EmptyLogo("logo must be a non-empty 2-D bit matrix")
    rows, cols = grid
    ri = np.arange(rows) % logo.shape[0]
    ci = np.arange(cols) % logo.shape[1]
    return (logo[np.ix_(ri, ci)] & 1).astype(np.uint8)


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def prng_next(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns (new state, output word)."""
    state = (state + GOLDEN_GAMMA) & MASK64
    return state, mix64(state)


def scramble_order(n: int, key: int) -> np.ndarray:
    """Keyed Fisher-Yates permutation of ``range(n)``.

    ``order[k]`` is the source index that lands in position ``k``.
    """
    order = list(range(n))
    state = key & MASK64
    for i in range(n - 1, 0, -1):
        state, word = prng_next(state)
        j = word % (i + 1)
        order[i], order[j] = order[j], order[i]
    return np.array(order, dtype=np.int64)


def scramble_plane(plane, key: int) -> np.ndarray:
    plane = np.asarray(plane, dtype=np.uint8)
    flat = plane.flatten(order="F")
    return flat[scramble_order(flat.size, key)].reshape(plane.shape, order="F")


def unscramble_plane(plane, key: int) -> np.ndarray:
    plane = np.asarray(plane, dtype=np.uint8)
    flat = plane.flatten(order="F")
    out = np.empty_like(flat)
    out[scramble_order(flat.size, key)] = flat
    return out.reshape(plane.shape, order="F")


def _block_view(px: np.ndarray, m: int) -> np.ndarray:
    rows, cols = block_grid(px.shape, m)
    return px[: rows * m, : cols * m].reshape(rows, m, cols, m)


def block_parity(px, m: int) -> np.ndarray:
    px = np.asarray(px, dtype=np.int64)
    return (_block_view(px, m).sum(axis=(1, 3)) & 1).astype(np.uint8)


def _centres(grid: tuple[int, int], m: int) -> tuple[np.ndarray, np.ndarray]:
    c = m // 2
    return np.arange(grid[0]) * m + c, np.arange(grid[1]) * m + c


def embed_layer1(img: GrayImage, plane, m: int) -> tuple[GrayImage, np.ndarray]:
    check_block_size(m)
    plane = np.asarray(plane, dtype=np.uint8)
    grid = block_grid(img.shape, m)
    if plane.shape != grid:
        raise GridMismatch(f"plane {plane.shape} does not match block grid {grid}")
    px = img.pixels.astype(np.int64)
    inc = block_parity(px, m) ^ plane
    rr, cc = _centres(grid, m)
    px[np.ix_(rr, cc)] += inc
    return GrayImage(px), inc.astype(np.uint8)


def extract_plane(img, m: int) -> np.ndarray:
    check_block_size(m)
    return block_parity(getattr(img, "pixels", img), m)


def restore_lsbs(img: GrayImage, lmap, m: int) -> GrayImage:
    check_block_size(m)
    lmap = np.asarray(lmap, dtype=np.uint8)
    grid = block_grid(img.shape, m)
    if lmap.shape != grid:
        raise GridMismatch(f"location map {lmap.shape} does not match block grid {grid}")
    px = img.pixels.astype(np.int64)
    rr, cc = _centres(grid, m)
    centres = px[np.ix_(rr, cc)]
    if np.any((centres == 0) & (lmap == 1)):
        raise CentreUnderflow("location map marks a centre pixel that is already 0")
    px[np.ix_(rr, cc)] = centres - lmap
    return GrayImage(px)
