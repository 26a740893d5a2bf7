"""render-figure: one experiment CSV in, one image out.

Exit codes: 0 success, 1 schema/IO failure (message names the offending
column), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import FIGURE_KINDS, FigureSpec, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render-figure",
        description="Render a figure from experiment CSV datasets")
    parser.add_argument("--kind", required=True, choices=FIGURE_KINDS)
    parser.add_argument("--in", dest="inputs", required=True, action="append",
                        metavar="CSV", help="input CSV (repeatable)")
    parser.add_argument("--out", required=True, help="output image path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(kind=args.kind,
                      inputs=tuple(Path(p) for p in args.inputs),
                      output=Path(args.out))
    try:
        render(spec)
    except (SchemaError, OSError) as exc:
        print(f"render-figure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
