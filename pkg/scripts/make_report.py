#!/usr/bin/env python3
"""Run the full verification suite and write the JSON report.

Equivalent to `nefpoly verify --all --out report.json`, kept as a script so
a report can be produced without installing the console entry point.
"""

import argparse

from nefpoly.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="report.json")
    ap.add_argument("--n", type=int, default=12, help="order for the exact suites")
    args = ap.parse_args()
    code = cli_main(["verify", "--all", "--n", str(args.n), "--out", args.out])
    print(f"report written to {args.out} (exit {code})")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
