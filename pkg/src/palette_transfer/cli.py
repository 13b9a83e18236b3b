"""Command line front end.

Subcommands: ``transfer`` (recolor a source image from a reference),
``palette`` (extract one image's palette as JSON), ``metrics`` (score an
existing source/result pair). Exit codes: 0 success, 2 bad arguments,
3 I/O error, 4 degenerate input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import colorspace, lighting, mapping, metrics, palette, segmentation
from .errors import DimensionMismatch, EmptyPeakSpace, UnreadableMask
from .pipeline import TransferConfig, run_transfer_full

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DEGENERATE = 4


def _add_palette_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--bins", type=int, default=100,
                        help="histogram bins per Lab channel (default 100)")
    parser.add_argument("--radius", type=int, default=3,
                        help="peak search window radius in bins (default 3)")
    parser.add_argument("--min-count", type=int, default=30,
                        help="minimum pixel count for a histogram peak (default 30)")
    parser.add_argument("--peaks", type=int, default=32, metavar="T",
                        help="maximum palette entries (default 32)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="palette-transfer",
        description="Automatic palette-based color transfer between images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("transfer", help="recolor a source image from a reference")
    tr.add_argument("--source", required=True, help="source image (PNG or JPEG)")
    tr.add_argument("--reference", required=True, help="reference image (PNG or JPEG)")
    tr.add_argument("--output", required=True, help="output PNG path")
    tr.add_argument("--source-mask", help="8-bit grayscale PNG foreground mask for the source")
    tr.add_argument("--reference-mask", help="8-bit grayscale PNG foreground mask for the reference")
    tr.add_argument("--alpha", type=float, default=lighting.DEFAULT_ALPHA,
                    help="weight of the mapped L channel, 0..1 (default 0.3)")
    _add_palette_args(tr)
    tr.add_argument("--neighbors", type=int, default=mapping.DEFAULT_NEIGHBORS,
                    help="winners blended into a displaced entry's target (default 3)")
    tr.add_argument("--enhance", action="store_true",
                    help="apply the built-in global lighting enhancement")
    tr.add_argument("--enhanced-l", metavar="PNG",
                    help="externally enhanced L channel (8-bit grayscale PNG)")
    tr.add_argument("--dump-mapping", metavar="JSON",
                    help="write the merged palette mapping as JSON")
    tr.add_argument("--metrics-out", metavar="JSON",
                    help="write the metrics report as JSON")

    pal = sub.add_parser("palette", help="extract an image's palette as JSON")
    pal.add_argument("--image", required=True, help="input image (PNG or JPEG)")
    pal.add_argument("--out", help="palette JSON path (default: stdout)")
    pal.add_argument("--labels", metavar="PNG",
                     help="also write the label map as 16-bit grayscale PNG")
    _add_palette_args(pal)

    met = sub.add_parser("metrics", help="score an existing source/result pair")
    met.add_argument("--source", required=True, help="source image")
    met.add_argument("--result", required=True, help="transfer result image")
    met.add_argument("--metrics-out", metavar="JSON", help="also write the report to a file")

    return parser


def _cmd_transfer(args: argparse.Namespace) -> int:
    cfg = TransferConfig(
        bins=args.bins, radius=args.radius, min_count=args.min_count,
        max_entries=args.peaks, alpha=args.alpha, neighbors=args.neighbors,
        enhance=args.enhance,
    )
    source = colorspace.load_image(args.source)
    reference = colorspace.load_image(args.reference)

    src_mask = ref_mask = None
    if args.source_mask:
        src_mask = segmentation.load_mask(args.source_mask, source.shape[:2])
    if args.reference_mask:
        ref_mask = segmentation.load_mask(args.reference_mask, reference.shape[:2])

    enhanced_l = None
    if args.enhanced_l:
        enhanced_l = lighting.load_l_channel(args.enhanced_l, source.shape[:2])

    run = run_transfer_full(source, reference, src_mask, ref_mask, cfg, enhanced_l)

    colorspace.save_png(args.output, run.rgb)
    if args.dump_mapping:
        Path(args.dump_mapping).write_text(
            json.dumps(mapping.mapping_records(run.transfer), indent=2))
    if args.metrics_out:
        Path(args.metrics_out).write_text(json.dumps(run.report.to_dict(), indent=2))
    return EXIT_OK


def _cmd_palette(args: argparse.Namespace) -> int:
    rgb = colorspace.load_image(args.image)
    lab = colorspace.rgb_to_lab(rgb)
    pal = palette.build_palette(lab, bins=args.bins, radius=args.radius,
                                min_count=args.min_count, max_entries=args.peaks)
    text = json.dumps(palette.palette_records(pal), indent=2)
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text)
    if args.labels:
        palette.save_label_map(args.labels, pal)
    return EXIT_OK


def _cmd_metrics(args: argparse.Namespace) -> int:
    source = colorspace.load_image(args.source)
    result = colorspace.load_image(args.result)
    report = metrics.build_report(source, result)
    text = json.dumps(report.to_dict(), indent=2)
    print(text)
    if args.metrics_out:
        Path(args.metrics_out).write_text(text)
    return EXIT_OK


_COMMANDS = {
    "transfer": _cmd_transfer,
    "palette": _cmd_palette,
    "metrics": _cmd_metrics,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, UnreadableMask) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except EmptyPeakSpace as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
