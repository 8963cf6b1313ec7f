"""Figure-rendering command line: `truncosc-figures render --spec file.json`."""

from __future__ import annotations

import argparse
import json
import sys

from .csvdata import SchemaError
from .render import load_spec, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="truncosc-figures")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure panel from a JSON spec")
    p.add_argument("--spec", required=True, help="FigureSpec JSON file")
    args = parser.parse_args(argv)

    try:
        spec = load_spec(args.spec)
        result = render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"missing input: {exc}", file=sys.stderr)
        return 1
    json.dump(result, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
