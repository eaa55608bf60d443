"""Embed every corpus image and print threshold, payload, capacity, PSNR and MSE."""

import argparse
from pathlib import Path

from revmark.core import load_image, load_logo
from revmark.errors import RevmarkError
from revmark.pipeline import EmbedConfig, embed, recover

DATA = Path(__file__).resolve().parents[1] / "tests" / "data"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--data", type=Path, default=DATA)
    ap.add_argument("--key", type=lambda s: int(s, 0), default=42)
    ap.add_argument("--block-size", type=int, default=5)
    args = ap.parse_args()

    cfg = EmbedConfig(key=args.key, block_size=args.block_size)
    logo = load_logo(args.data / "logo.pbm")
    print(f"{'image':16s} {'size':>9s} {'S':>3s} {'payload':>8s} {'capacity':>8s} {'PSNR dB':>8s} {'MSE':>7s}  exact")
    for path in sorted(args.data.glob("*.pgm")):
        img = load_image(path)
        size = f"{img.width}x{img.height}"
        try:
            res = embed(img, logo, cfg)
        except RevmarkError as exc:
            print(f"{path.stem:16s} {size:>9s}  -- {type(exc).__name__}: {exc}")
            continue
        exact = recover(res.watermarked, logo, cfg) == img
        print(
            f"{path.stem:16s} {size:>9s} {res.threshold:3d} {res.payload_bits:8d} {res.capacity:8d} "
            f"{res.report.psnr:8.2f} {res.report.mse:7.4f}  {exact}"
        )


if __name__ == "__main__":
    main()
