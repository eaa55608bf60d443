"""Sender and receiver flows.

Sender: narrow range -> keyed parity mark -> serialize overhead -> embed it
in the wavelet difference images -> inverse transform, retrying with a
larger shift threshold on overflow.

Receiver: remove the wavelet payload -> check block parities -> (if
authentic) undo the centre increments -> undo the range shift.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .core import PEAK, GrayImage, QualityReport, psnr
from .errors import (
    ImageTooSmall,
    InvalidConfig,
    MalformedOverhead,
    NotAuthentic,
    OverflowUnrecoverable,
    RevmarkError,
)
from .iwt import decompose_2d, reconstruct_2d
from .layer1 import (
    MAX_THRESHOLD,
    BookKeeping,
    block_grid,
    check_block_size,
    embed_layer1,
    extract_plane,
    narrow_range,
    restore_lsbs,
    restore_range,
    scramble_plane,
    tile_logo,
)
from .layer2 import capacity, embed_bits, empty_bins, extract_bits, recover_bands
from .overhead import decode_overhead, encode_overhead

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmbedConfig:
    key: int
    block_size: int = 5
    initial_threshold: int = 4
    max_threshold: int = MAX_THRESHOLD

    def __post_init__(self):
        check_block_size(self.block_size)
        if not 1 <= self.initial_threshold <= self.max_threshold <= MAX_THRESHOLD:
            raise InvalidConfig(
                f"need 1 <= initial_threshold ({self.initial_threshold}) <= "
                f"max_threshold ({self.max_threshold}) <= {MAX_THRESHOLD}"
            )
        if not 0 <= self.key < 1 << 64:
            raise InvalidConfig("key must be a 64-bit unsigned integer")


class EmbedResult(NamedTuple):
    watermarked: GrayImage
    report: QualityReport
    threshold: int
    payload_bits: int
    capacity: int


@dataclass
class VerificationReport:
    authentic: bool
    mismatch_count: int
    tamper_map: np.ndarray
    extraction_healthy: bool
    error: Optional[str] = None
    tamper_blocks: list = field(init=False)

    def __post_init__(self):
        self.tamper_blocks = [(int(r), int(c)) for r, c in np.argwhere(self.tamper_map)]

    def to_dict(self) -> dict:
        return {
            "authentic": self.authentic,
            "mismatch_count": self.mismatch_count,
            "extraction_healthy": self.extraction_healthy,
            "error": self.error,
            "grid": list(self.tamper_map.shape),
            "tamper_blocks": [list(b) for b in self.tamper_blocks],
        }


class Verification(NamedTuple):
    report: VerificationReport
    layer1: np.ndarray  # candidate layer-1 image, signed ints
    overhead: Optional[tuple[BookKeeping, np.ndarray]]


def even_region(shape: tuple[int, int]) -> tuple[int, int]:
    return shape[0] - shape[0] % 2, shape[1] - shape[1] % 2


def expected_plane(logo, shape: tuple[int, int], cfg: EmbedConfig) -> np.ndarray:
    return scramble_plane(tile_logo(logo, block_grid(shape, cfg.block_size)), cfg.key)


def _check_size(shape: tuple[int, int], m: int) -> None:
    if min(shape) < 2 * m:
        raise ImageTooSmall(f"image {shape[1]}x{shape[0]} is smaller than 2 blocks of {m} per side")


def embed(original: GrayImage, logo, cfg: EmbedConfig) -> EmbedResult:
    m = cfg.block_size
    _check_size(original.shape, m)
    plane = expected_plane(logo, original.shape, cfg)
    h2, w2 = even_region(original.shape)
    for S in range(cfg.initial_threshold, cfg.max_threshold + 1):
        narrowed, bk = narrow_range(original, S)
        marked, lmap = embed_layer1(narrowed, plane, m)
        payload = encode_overhead(bk, lmap)
        bands = empty_bins(decompose_2d(marked.pixels[:h2, :w2]))
        cap = capacity(bands)
        region = reconstruct_2d(embed_bits(bands, payload))
        if region.min() < 0 or region.max() > PEAK:
            log.debug("S=%d overflows (range %d..%d), retrying", S, region.min(), region.max())
            continue
        px = marked.pixels.astype(np.int64)
        px[:h2, :w2] = region
        out = GrayImage(px)
        return EmbedResult(out, psnr(original, out), S, int(payload.size), cap)
    raise OverflowUnrecoverable(f"still overflowing at threshold {cfg.max_threshold}")


def verify(watermarked: GrayImage, logo, cfg: EmbedConfig) -> Verification:
    m = cfg.block_size
    _check_size(watermarked.shape, m)
    h2, w2 = even_region(watermarked.shape)
    bands = decompose_2d(watermarked.pixels[:h2, :w2])

    overhead, error = None, None
    grid = block_grid(watermarked.shape, m)
    try:
        overhead = decode_overhead(extract_bits(bands), grid)
    except MalformedOverhead as exc:
        error = f"MalformedOverhead: {exc}"

    layer1 = watermarked.pixels.astype(np.int64)
    layer1[:h2, :w2] = reconstruct_2d(recover_bands(bands))
    tamper = (extract_plane(layer1, m) != expected_plane(logo, watermarked.shape, cfg)).astype(np.uint8)
    count = int(tamper.sum())
    healthy = overhead is not None
    report = VerificationReport(count == 0 and healthy, count, tamper, healthy, error)
    return Verification(report, layer1, overhead)


def recover(watermarked: GrayImage, logo, cfg: EmbedConfig) -> GrayImage:
    report, layer1, overhead = verify(watermarked, logo, cfg)
    if not report.authentic:
        raise NotAuthentic(
            f"{report.mismatch_count} block(s) fail parity" + (f"; {report.error}" if report.error else "")
        )
    if layer1.min() < 0 or layer1.max() > PEAK:
        raise NotAuthentic("layer-1 image leaves the 8-bit range")
    bk, lmap = overhead
    return restore_range(restore_lsbs(GrayImage(layer1), lmap, cfg.block_size), bk)


def tamper_overlay(image: GrayImage, tamper_map: np.ndarray, m: int) -> GrayImage:
    """Paint flagged blocks white on top of ``image``."""
    px = image.pixels.copy()
    for r, c in np.argwhere(tamper_map):
        px[r * m : (r + 1) * m, c * m : (c + 1) * m] = PEAK
    return GrayImage(px)


def tamper_map_image(tamper_map: np.ndarray) -> GrayImage:
    return GrayImage(np.asarray(tamper_map, dtype=np.int64) * PEAK)


__all__ = [
    "EmbedConfig",
    "EmbedResult",
    "RevmarkError",
    "Verification",
    "VerificationReport",
    "embed",
    "expected_plane",
    "recover",
    "tamper_map_image",
    "tamper_overlay",
    "verify",
]
