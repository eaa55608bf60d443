"""Command-line front end.

Exit codes: 0 success / authentic, 1 usage or file error, 2 not authentic,
3 recovery refused.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import core, pipeline
from .errors import NotAuthentic, RevmarkError

EXIT_OK, EXIT_ERROR, EXIT_NOT_AUTHENTIC, EXIT_REFUSED = 0, 1, 2, 3
KEY_ENV = "REVMARK_KEY"


class UsageError(RevmarkError):
    pass


def parse_key(text: str) -> int:
    try:
        key = int(text, 0)
    except ValueError:
        raise UsageError(f"key {text!r} is not a decimal or 0x-hex integer") from None
    if not 0 <= key < 1 << 64:
        raise UsageError("key must fit in 64 unsigned bits")
    return key


def _config(args) -> pipeline.EmbedConfig:
    text = args.key if args.key is not None else os.environ.get(KEY_ENV)
    if text is None:
        raise UsageError(f"--key is required (or set {KEY_ENV})")
    return pipeline.EmbedConfig(
        key=parse_key(text), block_size=args.block_size, initial_threshold=args.threshold
    )


def _print_quality(rep: core.QualityReport, fmt: str, extra: dict | None = None) -> None:
    psnr = None if rep.identical else rep.psnr
    if fmt == "json":
        print(json.dumps({"mse": rep.mse, "psnr": psnr, **(extra or {})}))
    else:
        print(f"PSNR: {'inf' if psnr is None else f'{psnr:.4f}'} dB")
        print(f"MSE: {rep.mse:.4f}")
        for k, v in (extra or {}).items():
            print(f"{k}: {v}")


def _print_report(report: pipeline.VerificationReport, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report.to_dict()))
        return
    print("authentic" if report.authentic else "NOT authentic")
    print(f"mismatched blocks: {report.mismatch_count}")
    print(f"overhead extraction: {'ok' if report.extraction_healthy else 'failed'}")
    if report.error:
        print(f"  {report.error}")
    if report.tamper_blocks:
        shown = ", ".join(f"({r},{c})" for r, c in report.tamper_blocks[:20])
        more = len(report.tamper_blocks) - 20
        print(f"tampered blocks: {shown}" + (f" ... +{more} more" if more > 0 else ""))


def cmd_embed(args) -> int:
    cfg = _config(args)
    result = pipeline.embed(core.load_image(args.input), core.load_logo(args.logo), cfg)
    core.save_image(result.watermarked, args.output)
    extra = {"threshold": result.threshold, "payload_bits": result.payload_bits, "capacity": result.capacity}
    _print_quality(result.report, args.format, extra)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    v = pipeline.verify(core.load_image(args.input), core.load_logo(args.logo), cfg)
    _print_report(v.report, args.format)
    return EXIT_OK if v.report.authentic else EXIT_NOT_AUTHENTIC


def cmd_localize(args) -> int:
    cfg = _config(args)
    image = core.load_image(args.input)
    v = pipeline.verify(image, core.load_logo(args.logo), cfg)
    out = Path(args.output)
    overlay = Path(args.overlay) if args.overlay else out.with_name(out.stem + "_overlay" + out.suffix)
    core.save_image(pipeline.tamper_map_image(v.report.tamper_map), out)
    core.save_image(pipeline.tamper_overlay(image, v.report.tamper_map, cfg.block_size), overlay)
    _print_report(v.report, args.format)
    return EXIT_OK if v.report.authentic else EXIT_NOT_AUTHENTIC


def cmd_recover(args) -> int:
    cfg = _config(args)
    try:
        restored = pipeline.recover(core.load_image(args.input), core.load_logo(args.logo), cfg)
    except NotAuthentic as exc:
        print(f"NotAuthentic: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    core.save_image(restored, args.output)
    print(f"recovered image written to {args.output}")
    return EXIT_OK


def cmd_metrics(args) -> int:
    _print_quality(core.psnr(core.load_image(args.reference), core.load_image(args.test)), args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revmark", description="Reversible authentication watermark for PGM images.")
    sub = parser.add_subparsers(dest="command", required=True)

    def keyed(name, help, func, output=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("--in", dest="input", required=True, help="input PGM (P5)")
        p.add_argument("--logo", required=True, help="logo as PBM (P4) or PGM (P5, thresholded at 128)")
        p.add_argument("--key", help=f"64-bit scramble key, decimal or 0x-hex (default: ${KEY_ENV})")
        p.add_argument("--block-size", type=int, default=5)
        p.add_argument("--threshold", type=int, default=4, help="initial shift threshold")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if output:
            p.add_argument("--out", dest="output", required=True)
        p.set_defaults(func=func)
        return p

    keyed("embed", "watermark an image", cmd_embed, output=True)
    keyed("verify", "check authenticity", cmd_verify)
    keyed("recover", "restore the original of an authentic image", cmd_recover, output=True)
    loc = keyed("localize", "write tamper maps", cmd_localize, output=True)
    loc.add_argument("--overlay", help="block-size overlay PGM (default: <out>_overlay.pgm)")

    met = sub.add_parser("metrics", help="PSNR/MSE between two images")
    met.add_argument("reference")
    met.add_argument("test")
    met.add_argument("--format", choices=("text", "json"), default="text")
    met.set_defaults(func=cmd_metrics)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except RevmarkError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
