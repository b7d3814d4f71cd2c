"""Command line entry point: certfig --csv pts.csv --summary pts.summary.json --out fig.png."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import figure

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; keep 2 for bad input files instead
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="certfig",
        description="Render a sweep CSV as a scatter plot with its "
                    "worst-slope envelope line.")
    parser.add_argument("--csv", required=True, help="sweep points CSV")
    parser.add_argument("--summary", required=True,
                        help="summary JSON sidecar")
    parser.add_argument("--out", required=True,
                        help="output image path, format from the extension")
    parser.add_argument("--max-points", type=_positive_int,
                        default=figure.DEFAULT_MAX_POINTS,
                        help="thin the scatter beyond this many markers")
    parser.add_argument("--xlabel", default=figure.DEFAULT_XLABEL)
    parser.add_argument("--ylabel", default=figure.DEFAULT_YLABEL)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = figure.FigureSpec(
        csv_path=Path(args.csv),
        summary_path=Path(args.summary),
        out_path=Path(args.out),
        xlabel=args.xlabel,
        ylabel=args.ylabel,
        max_points=args.max_points,
    )
    try:
        out = figure.render_scatter(spec)
    except (figure.InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"wrote {out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
