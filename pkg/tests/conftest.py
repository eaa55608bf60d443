from pathlib import Path

import numpy as np
import pytest

from revmark.core import GrayImage, load_image, load_logo
from revmark.pipeline import EmbedConfig

DATA = Path(__file__).parent / "data"

# images on which embedding is expected to succeed with the default config
CORPUS = [
    "moon",
    "coins",
    "brick",
    "chelsea",
    "rocket",
    "clock",
    "page",
    "noise_gauss",
    "saturated",
    "coins_137x136",
    "clock_116x116",
    "text_131x90",
    "rocket_98x130",
]
NATURAL_256 = ["moon", "coins", "brick", "chelsea", "rocket", "clock", "page"]


@pytest.fixture(scope="session")
def logo():
    return load_logo(DATA / "logo.pbm")


@pytest.fixture(scope="session")
def cfg():
    return EmbedConfig(key=42)


@pytest.fixture(scope="session")
def corpus():
    return {name: load_image(DATA / f"{name}.pgm") for name in CORPUS}


def retry_image(seed=1, size=128, extremes=8):
    """Flat noisy image with a few saturated pixels; needs S > 1 to avoid overflow."""
    rng = np.random.default_rng(seed)
    px = np.clip(np.rint(rng.normal(128, 1, (size, size))), 0, 255).astype(np.int64)
    idx = rng.integers(0, size, (extremes, 2))
    px[idx[:, 0], idx[:, 1]] = rng.choice([0, 255], extremes)
    return GrayImage(px)
