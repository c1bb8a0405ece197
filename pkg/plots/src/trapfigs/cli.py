"""CLI: render exported grid files to PNG figures."""

from __future__ import annotations

import argparse
import sys

from .reader import SchemaError
from .render import KINDS, FigureSpec, render


def build_parser():
    parser = argparse.ArgumentParser(
        prog="trapfigs",
        description="Render exported trap-potential grids (CSV/JSON) to PNG",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one grid file")
    p.add_argument("--in", dest="input", required=True, metavar="FILE")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--out", required=True, metavar="FILE.png")
    p.add_argument("--vmin", type=float, help="scale lower limit (uK)")
    p.add_argument("--vmax", type=float, help="scale upper limit (uK)")
    p.add_argument("--title")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    spec = FigureSpec(args.input, args.kind, args.out,
                      vmin=args.vmin, vmax=args.vmax, title=args.title)
    try:
        out = render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
