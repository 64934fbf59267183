"""Command line: figures --spec <file> --out <image>."""

from __future__ import annotations

import argparse
import sys

from .render import render, render_sweep
from .spec import parse_spec


def cli_main(argv) -> int:
    parser = argparse.ArgumentParser(
        prog="figures", description="Render twopop CSV outputs to a multi-panel image."
    )
    parser.add_argument("--spec", required=True, help="figure spec file")
    parser.add_argument("--out", required=True, help="output image path (png)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with open(args.spec) as fh:
            spec = parse_spec(fh.read())
        if spec.mode == "sweep":
            render_sweep(spec, args.out)
        else:
            render(spec, args.out)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
