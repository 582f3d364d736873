"""Command-line harness for the figure sweeps.

Commands: threshold, modes, squeeze, mode-number, lo, convergence. A flat
JSON config file seeds the run configuration; flags override file values.
Tables go to CSV with a '#'-prefixed header block recording the resolved
configuration, with an optional JSON mirror and a rendered PNG next to the
CSV (disable with --no-figure). Numbers carry 12 significant digits and row
order is fixed by sweep index, so outputs are byte-identical across reruns
at a fixed config.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .errors import InvalidArgumentError
from .sweeps import (
    RunConfig,
    Table,
    convergence_summary,
    sweep_lo,
    sweep_mode_number,
    sweep_modes,
    sweep_squeeze,
    sweep_threshold,
    with_doubled_grid,
)


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def write_csv(table: Table, path: str, config: RunConfig) -> None:
    lines = [f"# ringsqueeze {__version__}", f"# command: {table.command}"]
    resolved = json.dumps(config.resolved(), sort_keys=True)
    lines.append(f"# config: {resolved}")
    for key, value in sorted(table.meta.items()):
        lines.append(f"# {key}: {value}")
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(_fmt(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(table: Table, path: str, config: RunConfig) -> None:
    payload = {
        "version": __version__,
        "command": table.command,
        "config": config.resolved(),
        "meta": table.meta,
        "columns": list(table.columns),
        "rows": [[_fmt(v) for v in row] for row in table.rows],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringsqueeze",
        description="Pulsed squeezing in a photonic ring cavity: "
                    "threshold, characteristic modes, squeezing levels, "
                    "mode number, and local-oscillator shaping sweeps.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="flat JSON config file")
        p.add_argument("--out", help="output CSV path")
        p.add_argument("--json", action="store_true",
                       help="also write a JSON mirror next to the CSV")
        p.add_argument("--no-figure", action="store_true",
                       help="skip the PNG rendered next to the CSV")
        p.add_argument("--grid-points", type=int, dest="grid_points")
        p.add_argument("--grid-span", type=float, dest="grid_span")
        p.add_argument("--power-def", choices=("peak", "energy"),
                       dest="power_def")
        p.add_argument("--threads", type=int)
        p.add_argument("--delta", type=float)
        p.add_argument("--power-fraction", type=float, dest="power_fraction")
        p.add_argument("--sweep-min", type=float, dest="sweep_min")
        p.add_argument("--sweep-max", type=float, dest="sweep_max")
        p.add_argument("--sweep-count", type=int, dest="sweep_count")
        p.add_argument("--sweep-scale", choices=("log", "linear"),
                       dest="sweep_scale")
        p.add_argument("--convergence", action="store_true",
                       help="rerun at doubled grid points and append "
                            "relative-change columns")
        p.add_argument("--print-config", action="store_true",
                       help="print the fully resolved configuration and exit")

    add_common(sub.add_parser("threshold", help="threshold power vs bandwidth"))
    add_common(sub.add_parser("modes", help="leading characteristic modes"))
    p_squeeze = sub.add_parser("squeeze", help="squeezing levels")
    add_common(p_squeeze)
    p_squeeze.add_argument("--axis", choices=("power", "mode"),
                           default="power")
    p_k = sub.add_parser("mode-number", help="effective mode number")
    add_common(p_k)
    p_k.add_argument("--axis", choices=("power", "delta", "gamma_p"),
                     default="power")
    add_common(sub.add_parser("lo", help="local-oscillator shaping sweep"))
    add_common(sub.add_parser(
        "convergence",
        help="K, threshold ratio, and first-mode dB under grid doubling"))
    return parser


_OVERRIDE_KEYS = (
    "grid_points", "grid_span", "power_def", "threads", "delta",
    "power_fraction", "sweep_min", "sweep_max", "sweep_count", "sweep_scale",
)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    overrides = {k: getattr(args, k, None) for k in _OVERRIDE_KEYS}
    return cfg.with_overrides(**overrides)


def run_command(args: argparse.Namespace, cfg: RunConfig) -> Table:
    command = args.command
    if command == "threshold":
        fn, kwargs = sweep_threshold, {}
    elif command == "modes":
        fn, kwargs = sweep_modes, {}
    elif command == "squeeze":
        fn, kwargs = sweep_squeeze, {"axis": args.axis}
    elif command == "mode-number":
        fn, kwargs = sweep_mode_number, {"axis": args.axis}
    elif command == "lo":
        fn, kwargs = sweep_lo, {}
    elif command == "convergence":
        return convergence_summary(cfg)
    else:  # pragma: no cover - argparse guards this
        raise InvalidArgumentError(f"unknown command {command!r}")
    if getattr(args, "convergence", False):
        if command == "modes":
            raise InvalidArgumentError(
                "--convergence is not defined for the per-frequency modes "
                "table; use the convergence command instead"
            )
        return with_doubled_grid(fn, cfg, **kwargs)
    return fn(cfg, **kwargs)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
    except (InvalidArgumentError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.print_config:
        print(json.dumps(cfg.resolved(), indent=1, sort_keys=True))
        return 0
    try:
        table = run_command(args, cfg)
    except InvalidArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        write_csv(table, args.out, cfg)
        stem = os.path.splitext(args.out)[0]
        if args.json:
            write_json(table, stem + ".json", cfg)
        if not args.no_figure:
            from .figures import render_figure

            render_figure(table, stem + ".png")
        print(f"wrote {args.out}")
    else:
        print(",".join(table.columns))
        for row in table.rows:
            print(",".join(_fmt(v) for v in row))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
