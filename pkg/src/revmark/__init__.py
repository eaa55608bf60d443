"""Reversible two-layer authentication watermark for 8-bit grayscale images."""

from .core import GrayImage, QualityReport, load_image, load_logo, mse, psnr, save_image
from .errors import InsufficientCapacity, NotAuthentic, RevmarkError
from .pipeline import EmbedConfig, embed, recover, verify

__all__ = [
    "EmbedConfig",
    "GrayImage",
    "InsufficientCapacity",
    "NotAuthentic",
    "QualityReport",
    "RevmarkError",
    "embed",
    "load_image",
    "load_logo",
    "mse",
    "psnr",
    "recover",
    "save_image",
    "verify",
]
