"""Grayscale raster type, binary PGM/PBM I/O and quality metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, IoFailure, MalformedFile

PEAK = 255


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit grayscale image; ``pixels`` is a (height, width) uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D raster, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() > PEAK):
            raise ValueError("pixel values must lie in [0, 255]")
        arr = arr.astype(np.uint8)
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def from_list(cls, width: int, height: int, values) -> GrayImage:
        values = list(values)
        if len(values) != width * height:
            raise ValueError("pixel count does not match width x height")
        return cls(np.array(values, dtype=np.int64).reshape(height, width))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.pixels, other.pixels))

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height})"


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr: float  # math.inf when the images are identical

    @property
    def identical(self) -> bool:
        return self.mse == 0.0


def _read_header(data: bytes, magic: bytes, nfields: int) -> tuple[list[int], int]:
    """Parse ``magic`` followed by ``nfields`` ASCII integers.

    Returns the integers and the offset of the first raster byte. Comments
    (``#`` to end of line) are allowed between tokens, as in netpbm.
    """
    if data[:2] != magic:
        raise MalformedFile(f"bad magic {data[:2]!r}, expected {magic!r}")
    pos = 2
    fields = []
    while len(fields) < nfields:
        if pos >= len(data):
            raise MalformedFile("truncated header")
        ch = data[pos : pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            end = data.find(b"\n", pos)
            pos = len(data) if end < 0 else end + 1
        elif ch.isdigit():
            start = pos
            while pos < len(data) and data[pos : pos + 1].isdigit():
                pos += 1
            fields.append(int(data[start:pos]))
        else:
            raise MalformedFile(f"unexpected byte {ch!r} in header")
    # exactly one whitespace byte separates the header from the raster
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise MalformedFile("missing whitespace after header")
    return fields, pos + 1


def _read_bytes(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise MalformedFile(f"cannot read {path}: {exc}") from exc


def decode_pgm(data: bytes) -> GrayImage:
    (width, height, maxval), off = _read_header(data, b"P5", 3)
    if maxval != PEAK:
        raise MalformedFile(f"maxval {maxval} unsupported, need 255")
    if width == 0 or height == 0:
        raise MalformedFile("empty raster")
    need = width * height
    payload = data[off : off + need]
    if len(payload) < need:
        raise MalformedFile(f"truncated payload: {len(payload)} of {need} bytes")
    return GrayImage(np.frombuffer(payload, dtype=np.uint8).reshape(height, width))


def encode_pgm(img: GrayImage) -> bytes:
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()


def load_image(path) -> GrayImage:
    return decode_pgm(_read_bytes(path))


def save_image(img: GrayImage, path) -> None:
    try:
        Path(path).write_bytes(encode_pgm(img))
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def load_logo(path) -> np.ndarray:
    """Read a binary logo as a 0/1 uint8 matrix.

    PBM (P4) bits are taken as-is (1 = black). PGM (P5) is thresholded:
    pixels >= 128 become 1.
    """
    data = _read_bytes(path)
    if data[:2] == b"P4":
        (width, height), off = _read_header(data, b"P4", 2)
        stride = (width + 7) // 8
        need = stride * height
        payload = data[off : off + need]
        if len(payload) < need or width == 0 or height == 0:
            raise MalformedFile("truncated PBM payload")
        rows = np.frombuffer(payload, dtype=np.uint8).reshape(height, stride)
        return np.unpackbits(rows, axis=1)[:, :width].copy()
    if data[:2] == b"P5":
        return (decode_pgm(data).pixels >= 128).astype(np.uint8)
    raise MalformedFile(f"logo must be P4 or P5, got {data[:2]!r}")


def save_pbm(bits: np.ndarray, path) -> None:
    bits = np.asarray(bits, dtype=np.uint8)
    height, width = bits.shape
    body = np.packbits(bits, axis=1).tobytes()
    try:
        Path(path).write_bytes(f"P4\n{width} {height}\n".encode("ascii") + body)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def _as_pixels(img) -> np.ndarray:
    if isinstance(img, GrayImage):
        return img.pixels
    return np.asarray(img)


def mse(a, b) -> float:
    pa, pb = _as_pixels(a), _as_pixels(b)
    if pa.shape != pb.shape:
        raise DimensionMismatch(f"{pa.shape} vs {pb.shape}")
    diff = pa.astype(np.int64) - pb.astype(np.int64)
    return float(np.sum(diff * diff, dtype=np.float64) / diff.size)


def psnr(a, b) -> QualityReport:
    err = mse(a, b)
    if err == 0.0:
        return QualityReport(0.0, math.inf)
    return QualityReport(err, 10.0 * math.log10(PEAK * PEAK / err))
