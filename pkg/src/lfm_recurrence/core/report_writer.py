"""
Report serialization for the command line.

Every command produces a Report: a JSON payload plus, for tabular results
(orbits, sweeps, eigenvalues), a CSV header and rows. Reports are written to
stdout or to a file, as JSON, CSV (UTF-8, header row, 17 significant digits)
or as rich tables for terminal use.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, TextIO

from rich.console import Console
from rich.table import Table

from lfm_recurrence.core.config import OutputFormat
from lfm_recurrence.core.literals import format_real
from lfm_recurrence.utils.error_handler import FileError, get_error_handler
from lfm_recurrence.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass
class Report:
    """
    Result of one command.

    Attributes:
        command: Command name
        payload: JSON body
        header: CSV column names for tabular reports
        rows: CSV rows (numbers are formatted on output)
    """

    command: str
    payload: dict[str, Any] = field(default_factory=dict)
    header: Optional[list[str]] = None
    rows: list[list[Any]] = field(default_factory=list)

    @property
    def is_tabular(self) -> bool:
        return self.header is not None


def _format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_real(value)
    if isinstance(value, complex):
        return f"{format_real(value.real)};{format_real(value.imag)}"
    if value is None:
        return ""
    return str(value)


def _flatten(payload: dict[str, Any], prefix: str = "") -> list[list[str]]:
    """key,value rows for non-tabular payloads in CSV mode."""
    rows: list[list[str]] = []
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_flatten(value, f"{name}."))
        elif isinstance(value, list):
            rows.append([name, json.dumps(value)])
        else:
            rows.append([name, _format_cell(value)])
    return rows


class ReportWriter:
    """
    Serialize reports as JSON or CSV.

    Example:
        writer = ReportWriter(OutputFormat.CSV)
        writer.write(report, Path("out/orbit.csv"))
    """

    def __init__(self, fmt: OutputFormat = OutputFormat.JSON) -> None:
        self.fmt = OutputFormat(fmt)
        self.error_handler = get_error_handler()

    def render(self, report: Report) -> str:
        """Serialize a report to text."""
        if self.fmt == OutputFormat.JSON:
            return json.dumps(report.payload, indent=2) + "\n"

        buffer = io.StringIO()
        writer = csv.writer(buffer, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
        if report.is_tabular:
            writer.writerow(report.header)
            writer.writerows([_format_cell(v) for v in row] for row in report.rows)
        else:
            writer.writerow(["key", "value"])
            writer.writerows(_flatten(report.payload))
        return buffer.getvalue()

    def write(self, report: Report, file_path: Path) -> Path:
        """
        Write a report to a file, creating its directory.

        Raises:
            FileError: if the file cannot be written
        """
        file_path = Path(file_path)
        self.error_handler.validate_directory(file_path.parent, create=True, writable=True)
        try:
            with open(file_path, "w", newline="", encoding="utf-8") as f:
                f.write(self.render(report))
        except OSError as e:
            raise FileError(f"report_writer: failed to write {file_path}: {e}", file_path=file_path) from e

        logger.info(f"Wrote {report.command} report to {file_path}")
        return file_path

    def emit(self, report: Report, stream: TextIO) -> None:
        stream.write(self.render(report))


def render_pretty(report: Report, console: Optional[Console] = None) -> None:
    """Print a report as rich tables."""
    console = console or Console()
    if report.is_tabular:
        table = Table(title=report.command)
        for name in report.header:
            table.add_column(name)
        for row in report.rows:
            table.add_row(*(_format_cell(v) for v in row))
        console.print(table)
        return

    table = Table(title=report.command, show_header=False)
    table.add_column("key", style="cyan")
    table.add_column("value")
    for key, value in _flatten(report.payload):
        table.add_row(key, value)
    console.print(table)
