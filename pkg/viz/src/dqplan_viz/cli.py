"""Command line for the renderer: ``render`` and ``compare``."""

from __future__ import annotations

import argparse
import sys

from .reader import SchemaError
from .render import RenderOptions, render, render_compare


def _options_from(args: argparse.Namespace) -> RenderOptions:
    return RenderOptions(
        arrow_stride=args.arrow_stride,
        arrow_axis=args.arrow_axis,
        show_tree=args.tree,
        output=args.out,
        figure_size=tuple(args.figsize),
        arrow_length=args.arrow_length,
    )


def _add_render_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", required=True, help="output PNG file")
    parser.add_argument("--arrow-stride", type=int, default=10,
                        help="draw one orientation arrow every N path samples")
    parser.add_argument("--arrow-axis", choices=["x", "y", "z"], default="x",
                        help="body axis visualized by the arrows")
    parser.add_argument("--tree", action="store_true", help="draw the exploration tree")
    parser.add_argument("--figsize", type=float, nargs=2, default=[8.0, 7.0],
                        metavar=("W", "H"))
    parser.add_argument("--arrow-length", type=float, default=None,
                        help="drawn arrow length in meters (default: 4%% of scene diagonal)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dqplan-viz",
        description="Render dqplan path exports as static 3D figures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    one = sub.add_parser("render", help="render one path export")
    one.add_argument("path_file")
    _add_render_flags(one)

    two = sub.add_parser("compare", help="render two exports of one scenario side by side")
    two.add_argument("path_file_a")
    two.add_argument("path_file_b")
    _add_render_flags(two)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        options = _options_from(args)
        if args.command == "render":
            out = render(args.path_file, options)
        else:
            out = render_compare(args.path_file_a, args.path_file_b, options)
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
