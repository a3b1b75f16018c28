"""
Command-line interface for lfm-recurrence.

Usage:
    lfm-recurrence classify --preset parabolic-nonauto
    lfm-recurrence decide --map "3,1,1,3" --nu 0 --lambda 1.5
    lfm-recurrence orbit --preset elliptic-rational --max-iter 5 --format csv
    lfm-recurrence sweep --preset hyperbolic-auto --nu-grid=-1:2:50 --lambda-grid 0.1:3:50
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from rich.console import Console
from rich.table import Table

from lfm_recurrence import __version__
from lfm_recurrence.core.config import OutputFormat, RunConfig
from lfm_recurrence.core.experiments import Command, run_command, sweep
from lfm_recurrence.core.literals import parse_complex, parse_series_literal
from lfm_recurrence.core.presets import PRESETS, preset_names
from lfm_recurrence.core.report_writer import Report, ReportWriter, render_pretty
from lfm_recurrence.utils.error_handler import ExitCode, ValidationError, get_error_handler
from lfm_recurrence.utils.logger import get_logger

logger = get_logger(__name__)


def parse_grid(text: str) -> list[float]:
    """
    Parse a grid: "start:stop:count" (inclusive linspace) or comma-separated reals.

    Raises:
        ValidationError: for malformed grids
    """
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            return [float(x) for x in np.linspace(float(start), float(stop), int(count))]
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise ValidationError(f"cli_experiments: invalid grid {text!r} ({e})", field="grid") from e


def _add_common(parser: argparse.ArgumentParser) -> None:
    symbol = parser.add_mutually_exclusive_group()
    symbol.add_argument("--map", dest="map_literal", help='coefficients "a,b,c,d" of (az+b)/(cz+d)')
    symbol.add_argument("--preset", choices=preset_names(), help="named example symbol")

    parser.add_argument("--nu", type=float, help="weight parameter of S_nu")
    parser.add_argument("--lambda", dest="lam", help="complex scalar lambda, e.g. 1, 0.5i, 1-2i")
    parser.add_argument("--degree", type=int, help="series truncation degree N")
    parser.add_argument("--max-iter", type=int, help="orbit length / iteration budget K")
    parser.add_argument("--tol", type=float, help="convergence tolerance")
    parser.add_argument("--size", type=int, help="matrix section dimension")
    parser.add_argument("--w", help="kernel point (complex literal, |w| < 1)")
    parser.add_argument("--k-max", type=int, help="number of discrete spectrum points")
    parser.add_argument("--series", help="input series as JSON array of [re, im] pairs")
    parser.add_argument("--modulo-constants", action="store_true", default=None,
                        help="measure orbit distances modulo constants")
    parser.add_argument("--format", dest="fmt", choices=[f.value for f in OutputFormat])
    parser.add_argument("--out", type=Path, help="write the report to this file instead of stdout")
    parser.add_argument("--pretty", action="store_true", help="render the report as rich tables")
    parser.add_argument("--config", type=Path, help="JSON run configuration (flags override it)")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    parser.add_argument("--log-dir", type=Path, help="directory for a rotating log file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lfm-recurrence",
        description="Recurrence of weighted composition operators with linear fractional symbols.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    for command in Command:
        _add_common(commands.add_parser(command.value, help=f"run the {command} experiment"))

    sweep_parser = commands.add_parser("sweep", help="recurrence verdicts over a (nu, |lambda|) grid")
    _add_common(sweep_parser)
    sweep_parser.add_argument("--nu-grid", required=True, help='"start:stop:count" or "a,b,c"')
    sweep_parser.add_argument("--lambda-grid", required=True, help='|lambda| values, same syntax')
    sweep_parser.add_argument("--workers", type=int, help="parallel workers")

    commands.add_parser("presets", help="list the preset symbols")
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    """Base configuration (from --config or defaults) with command-line overrides."""
    base = RunConfig.load(args.config) if getattr(args, "config", None) else RunConfig()
    return base.replace(
        nu=args.nu,
        lam=parse_complex(args.lam) if args.lam is not None else None,
        degree=args.degree,
        max_iter=args.max_iter,
        tol=args.tol,
        size=args.size,
        w=parse_complex(args.w) if args.w is not None else None,
        k_max=args.k_max,
        fmt=args.fmt,
        workers=getattr(args, "workers", None),
        modulo_constants=args.modulo_constants,
    )


def _presets_table(console: Console) -> None:
    table = Table(title="presets")
    table.add_column("name", style="cyan")
    table.add_column("map")
    table.add_column("category")
    for preset in PRESETS.values():
        table.add_row(preset.name, preset.formula, str(preset.category))
    console.print(table)


def run(argv: Optional[Sequence[str]] = None) -> ExitCode:
    """
    Parse arguments, run the command and emit its report.

    Returns:
        Exit code (0 success, 2 validation, 3 numerical, 4 file)
    """
    args = build_parser().parse_args(argv)
    handler = get_error_handler()
    handler.configure_logging(getattr(args, "verbose", 0), getattr(args, "log_dir", None))

    if args.command == "presets":
        _presets_table(Console())
        return ExitCode.SUCCESS

    try:
        config = build_config(args)
        spec = args.map_literal if args.map_literal is not None else args.preset
        series = parse_series_literal(args.series, config.nu) if args.series else None

        report: Report
        if args.command == "sweep":
            if spec is None:
                raise ValidationError("cli_experiments: sweep needs --map or --preset", field="map")
            report = sweep(spec, parse_grid(args.nu_grid), parse_grid(args.lambda_grid), config)
        else:
            report = run_command(args.command, spec, config, series)

        fmt = OutputFormat(config.fmt) if config.fmt is not None else _default_format(report)
        writer = ReportWriter(fmt)
        if args.out is not None:
            writer.write(report, args.out)
        elif args.pretty:
            render_pretty(report)
        else:
            writer.emit(report, sys.stdout)
        return ExitCode.SUCCESS

    except Exception as e:
        return handler.handle_exception(e, args.command)


def _default_format(report: Report) -> OutputFormat:
    """CSV for orbit and sweep tables, JSON otherwise."""
    return OutputFormat.CSV if report.command in ("orbit", "sweep") else OutputFormat.JSON
