"""CLI: `consensus-figures render --input results.csv --out figures/ --format svg`."""

import argparse
import sys

from .render import EmptyInput, MissingColumns, render_boxplots


class _Parser(argparse.ArgumentParser):
    # bad arguments are validation errors: exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"error: {message}\n")


def build_parser():
    parser = _Parser(prog="consensus-figures")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render per-dataset ARI boxplots")
    p.add_argument("--input", required=True, help="harness results CSV")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=["svg", "png"], default="svg")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        written = render_boxplots(args.input, args.out, format=args.format)
    except (MissingColumns, EmptyInput, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
