#!/usr/bin/env python3
"""Rebuild all six tables and write them to a directory.

    python3 scripts/reproduce_tables.py --outdir results --compare
"""
import argparse
import time
from pathlib import Path

from taylor_forge.tables import TABLES, run_table

EXT = {"csv": "csv", "markdown": "md", "json": "json"}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--format", choices=sorted(EXT), default="csv")
    ap.add_argument("--compare", action="store_true", help="add oracle error columns")
    ap.add_argument("--full-precision", action="store_true")
    args = ap.parse_args()

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name in TABLES:
        t = time.perf_counter()
        doc = run_table(name, compare=args.compare)
        secs = time.perf_counter() - t
        path = out / f"{name}.{EXT[args.format]}"
        path.write_text(doc.render(args.format, args.full_precision), encoding="utf-8", newline="")
        print(f"{name}: {secs * 1e3:7.1f} ms -> {path}")


if __name__ == "__main__":
    main()
