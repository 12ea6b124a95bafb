import argparse
import sys

from . import render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="figs")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render")
    p.add_argument("--spec", required=True, help="figure spec JSON")
    p.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        render.render(args.spec, args.out)
    except (render.FigError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
