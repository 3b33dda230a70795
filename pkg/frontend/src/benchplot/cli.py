import argparse
import sys

from .core import SchemaError, plot_scaling


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="benchplot",
        description="log-log scaling plot with fitted exponents from a bench CSV")
    ap.add_argument("csv", help="bench CSV (frozen schema)")
    ap.add_argument("out", help="output image path (png/svg/...)")
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        plot_scaling(args.csv, args.out)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
