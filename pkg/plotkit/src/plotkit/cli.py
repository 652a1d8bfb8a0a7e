"""Command-line entry point: plotkit FIGURE CSV OUTPUT.

Exit codes: 0 success, 2 schema or content error, 64 usage error.
"""

from __future__ import annotations

import argparse
import sys

from plotkit.spec import FIGURE_IDS, FigureSpec, PlotkitError
from plotkit.figures import render

EXIT_OK = 0
EXIT_DATA = 2
EXIT_USAGE = 64


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plotkit", description=__doc__)
    parser.add_argument("figure", choices=FIGURE_IDS,
                        help="which figure to render")
    parser.add_argument("csv", help="sweep.csv produced by the flra CLI")
    parser.add_argument("output", help="output image path (png/pdf/svg)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        path = render(FigureSpec(args.figure, args.csv, args.output))
    except PlotkitError as exc:
        print(f"plotkit: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    print(f"wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
