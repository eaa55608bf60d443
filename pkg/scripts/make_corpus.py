"""Regenerate the test corpus in tests/data from scikit-image's bundled images.

Natural images are resized to 256x256. The odd-sized ones are crops
matching the sizes used in the original experiments. Synthetic images
cover Gaussian noise and saturated 0/255 regions. ``camera`` and
``noise_uniform`` are kept on purpose: they have too little capacity and
exercise the failure path.
"""

import argparse
from pathlib import Path

import numpy as np
from skimage import data, transform

from revmark.core import GrayImage, save_image, save_pbm


def gray(img):
    if img.ndim == 3:
        img = img[..., :3] @ [0.299, 0.587, 0.114]
    return img.astype(np.uint8)


def resize(img, h, w):
    out = transform.resize(img.astype(np.float64), (h, w), anti_aliasing=True, preserve_range=True)
    return np.rint(out).astype(np.uint8)


def crop(img, h, w):
    top = (img.shape[0] - h) // 2
    left = (img.shape[1] - w) // 2
    return img[top : top + h, left : left + w]


def build(seed=2024):
    rng = np.random.default_rng(seed)
    natural = {
        "moon": resize(data.moon(), 256, 256),
        "coins": resize(data.coins(), 256, 256),
        "brick": resize(data.brick(), 256, 256),
        "chelsea": resize(gray(data.chelsea()), 256, 256),
        "rocket": resize(gray(data.rocket()), 256, 256),
        "clock": crop(data.clock(), 256, 256),
        "page": resize(data.page(), 256, 256),
        "camera": resize(data.camera(), 256, 256),
    }
    saturated = natural["clock"].copy()
    saturated[10:18, 10:18] = 0
    saturated[200:208, 30:38] = 255
    saturated[120:126, 180:186] = rng.choice([0, 1, 2, 253, 254, 255], size=(6, 6))

    images = dict(natural)
    images.update(
        {
            "noise_gauss": np.clip(np.rint(rng.normal(128, 2, (256, 256))), 0, 255),
            "noise_uniform": rng.integers(0, 256, size=(256, 256)),
            "saturated": saturated,
            "coins_137x136": crop(data.coins(), 136, 137),
            "clock_116x116": crop(resize(data.clock(), 150, 200), 116, 116),
            "text_131x90": crop(data.text(), 90, 131),
            "rocket_98x130": resize(gray(data.rocket()), 130, 98),
        }
    )
    # 51x51 logo: the horse silhouette, one period for a 256x256 image at m=5
    horse = transform.resize(data.horse().astype(float), (51, 51), order=0, anti_aliasing=False)
    logo = (horse < 0.5).astype(np.uint8)
    return images, logo


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=Path(__file__).resolve().parents[1] / "tests" / "data", type=Path)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    images, logo = build()
    for name, px in images.items():
        save_image(GrayImage(px), args.out / f"{name}.pgm")
        print(f"{name:16s} {px.shape[1]}x{px.shape[0]}")
    save_pbm(logo, args.out / "logo.pbm")
    print(f"logo             51x51, {int(logo.sum())} set bits")


if __name__ == "__main__":
    main()
