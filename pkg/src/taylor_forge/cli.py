"""Command line entry point: ``taylor-forge <command> [options]``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import problems, tables
from .errors import DescriptorError, DomainError, NumericFailure, TaylorForgeError

TABLE_COMMANDS = tuple(f"table{i}" for i in range(1, 7))
COMMANDS = TABLE_COMMANDS + ("solve", "radius", "eval")
FORMATS = ("csv", "markdown", "json")

EXIT_OK, EXIT_DESCRIPTOR, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    problem: str | None = None
    order: int | None = None
    output_format: str = "csv"
    output_path: str | None = None
    compare: bool = False
    window: int | None = None
    full_precision: bool = False
    at: tuple = ()

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.order is not None and self.order < 1:
            raise DescriptorError("order", "must be >= 1")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown format {self.output_format!r}")


def _descriptor(cfg: RunConfig) -> dict:
    if not cfg.problem:
        raise DescriptorError("problem", f"{cfg.command} needs --problem FILE")
    d = problems.load_descriptor(cfg.problem)
    if cfg.order is not None:
        d["order"] = cfg.order
        d.pop("degree", None)
    return d


def run_solve(cfg: RunConfig) -> dict:
    d = _descriptor(cfg)
    return problems.solve_document(d, points=list(cfg.at) if cfg.at else None, window=cfg.window)


def run_radius(cfg: RunConfig) -> dict:
    d = _descriptor(cfg)
    return problems.radius_document(d, window=cfg.window, checkpoints=tables.ROOT_N)


def run_eval(cfg: RunConfig) -> dict:
    d = _descriptor(cfg)
    doc = problems.solve_document(d, points=list(cfg.at) if cfg.at else None, window=cfg.window)
    return {k: doc[k] for k in ("type", "order", "evaluations")}


def _flat_csv(doc: dict) -> str:
    """CSV view of a solve/radius/eval document: one key,value row per scalar."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])

    def walk(prefix, v):
        if isinstance(v, dict):
            for k in sorted(v):
                walk(f"{prefix}.{k}" if prefix else k, v[k])
        elif isinstance(v, list):
            for i, item in enumerate(v):
                walk(f"{prefix}[{i}]", item)
        else:
            w.writerow([prefix, repr(v) if isinstance(v, float) else v])

    walk("", doc)
    return buf.getvalue()


def render_document(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"
    text = _flat_csv(doc)
    if fmt == "csv":
        return text
    rows = list(csv.reader(io.StringIO(text)))
    return "\n".join(["| key | value |", "|---|---|"] + [f"| {k} | {v} |" for k, v in rows[1:]]) + "\n"


def execute(cfg: RunConfig) -> str:
    if cfg.command in TABLE_COMMANDS:
        doc = tables.run_table(cfg.command, compare=cfg.compare)
        return doc.render(cfg.output_format, cfg.full_precision)
    runner = {"solve": run_solve, "radius": run_radius, "eval": run_eval}[cfg.command]
    return render_document(runner(cfg), cfg.output_format)


def _point(text: str):
    parts = [float(v) for v in text.split(",")]
    return parts[0] if len(parts) == 1 else parts


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="taylor-forge", description="Taylor series tables and ODE/PDE series solves.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--problem", help="JSON problem descriptor (solve, radius, eval)")
    p.add_argument("--order", type=int, help="highest coefficient index to compute")
    p.add_argument("--format", dest="output_format", choices=FORMATS, default="csv")
    p.add_argument("--out", dest="output_path", help="write output here instead of stdout")
    p.add_argument("--compare", action="store_true", help="attach oracle columns and absolute errors")
    p.add_argument("--window", type=int, help="tail window for the radius estimate")
    p.add_argument("--full-precision", action="store_true", help="17 significant digits in tables")
    p.add_argument("--at", type=_point, action="append", default=[], help="evaluation point x or x,y (repeatable)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            args.command, args.problem, args.order, args.output_format, args.output_path,
            args.compare, args.window, args.full_precision, tuple(args.at),
        )
        text = execute(cfg)
    except DescriptorError as exc:
        print(f"descriptor error: {exc}", file=sys.stderr)
        return EXIT_DESCRIPTOR
    except (NumericFailure, DomainError, TaylorForgeError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if cfg.output_path:
            Path(cfg.output_path).write_text(text, encoding="utf-8", newline="")
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
