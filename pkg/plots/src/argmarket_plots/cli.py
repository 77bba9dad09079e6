"""Command line for the figure renderer.  Exit codes: 0 success, 2 bad input
(schema mismatch, empty selection, bad flags), 3 I/O error."""

from __future__ import annotations

import argparse
import sys

from .render import FigureSpec, NoMatchError, SchemaError, render


def _parse_filters(pairs: list[str]) -> dict[str, str]:
    filters = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValueError(f"--filter expects key=value, got '{pair}'")
        key, _, value = pair.partition("=")
        filters[key.strip()] = value.strip()
    return filters


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="argmarket-plots",
        description="Render profit-vs-alpha figures from a sweep CSV",
    )
    parser.add_argument("csv", help="sweep CSV path")
    parser.add_argument("--out-dir", default="figures")
    parser.add_argument("--format", choices=["png", "svg"], default="svg")
    parser.add_argument(
        "--filter", action="append", default=[], metavar="KEY=VALUE",
        help="restrict to matching combinations (rep_system, delta_n_arg, "
             "f_ii, delta); repeatable",
    )
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return 0 if exit_.code in (0, None) else int(exit_.code)
    try:
        spec = FigureSpec(out_dir=args.out_dir, image_format=args.format,
                          filters=_parse_filters(args.filter))
        written = render(args.csv, spec)
    except (SchemaError, NoMatchError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return 3
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
