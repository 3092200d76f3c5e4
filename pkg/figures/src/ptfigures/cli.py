"""Command-line entry point: ptfigures --figure fig2 --inputs csv:label ... --out path."""

from __future__ import annotations

import argparse
import sys

from .render import FigureInputError, FigureSpec, parse_input_arg, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="ptfigures", description=__doc__)
    parser.add_argument("--figure", required=True, choices=["fig2", "fig3", "fig4"])
    parser.add_argument(
        "--inputs",
        required=True,
        nargs="+",
        metavar="CSV:LABEL",
        help="run.csv files, each labeled <initial_state>,r=<value>",
    )
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--format", default=None, help="image format (default: from extension)")
    args = parser.parse_args(argv)
    try:
        spec = FigureSpec(
            figure_id=args.figure,
            inputs=tuple(parse_input_arg(item) for item in args.inputs),
            output=args.out,
            image_format=args.format,
        )
        render(spec)
    except FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
