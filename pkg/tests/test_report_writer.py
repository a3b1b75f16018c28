"""
Unit Tests for Report Serialization and the Error/Logging Utilities.
"""

import csv
import io
import json
import logging
from pathlib import Path

import pytest
from rich.console import Console

from lfm_recurrence.core.config import OutputFormat
from lfm_recurrence.core.report_writer import Report, ReportWriter, render_pretty
from lfm_recurrence.utils.error_handler import (
    ConvergenceError,
    DegenerateMapError,
    ErrorHandler,
    ExitCode,
    FileError,
    ParseError,
)
from lfm_recurrence.utils.logger import PACKAGE_LOGGER, ProcessingLogger, get_logger


@pytest.fixture
def orbit_report() -> Report:
    return Report(
        "orbit",
        {"records": [{"k": 1, "distance": 0.1}]},
        header=["k", "distance", "running_min"],
        rows=[[1, 0.1, 0.1], [2, 1 / 3, 0.1]],
    )


@pytest.fixture
def captured_handler() -> ErrorHandler:
    return ErrorHandler(console=Console(file=io.StringIO(), width=200))


class TestReportWriter:
    """JSON and CSV rendering."""

    def test_json(self, orbit_report: Report) -> None:
        text = ReportWriter(OutputFormat.JSON).render(orbit_report)
        assert json.loads(text) == orbit_report.payload

    def test_csv_rows(self, orbit_report: Report) -> None:
        text = ReportWriter(OutputFormat.CSV).render(orbit_report)
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == ["k", "distance", "running_min"]
        assert rows[1] == ["1", "0.10000000000000001", "0.10000000000000001"]
        assert float(rows[2][1]) == 1 / 3

    def test_csv_key_value_fallback(self) -> None:
        report = Report("decide", {"recurrent": True, "bounds": {"lower": 0.5, "upper": None}, "mu": [1, 2]})
        rows = list(csv.reader(io.StringIO(ReportWriter(OutputFormat.CSV).render(report))))
        assert rows == [["key", "value"], ["recurrent", "true"], ["bounds.lower", "0.5"],
                        ["bounds.upper", ""], ["mu", "[1, 2]"]]

    def test_write_creates_directory(self, orbit_report: Report, tmp_path: Path) -> None:
        path = ReportWriter(OutputFormat.CSV).write(orbit_report, tmp_path / "out" / "orbit.csv")
        assert path.read_text(encoding="utf-8").startswith("k,distance,running_min\n")

    def test_write_into_file_path_fails(self, orbit_report: Report, tmp_path: Path) -> None:
        blocker = tmp_path / "blocker"
        blocker.write_text("", encoding="utf-8")
        with pytest.raises(FileError):
            ReportWriter().write(orbit_report, blocker / "orbit.json")

    def test_emit(self, orbit_report: Report) -> None:
        stream = io.StringIO()
        ReportWriter(OutputFormat.CSV).emit(orbit_report, stream)
        assert stream.getvalue().count("\n") == 3

    def test_render_pretty(self, orbit_report: Report) -> None:
        console = Console(file=io.StringIO(), width=120)
        render_pretty(orbit_report, console)
        render_pretty(Report("classify", {"category": "Identity"}), console)
        output = console.file.getvalue()
        assert "running_min" in output
        assert "Identity" in output


class TestErrorHandler:
    """Exit-code mapping and user messages."""

    @pytest.mark.parametrize("exc, code", [
        (ParseError("bad", "1x", 1), ExitCode.VALIDATION_ERROR),
        (DegenerateMapError("degenerate"), ExitCode.VALIDATION_ERROR),
        (ConvergenceError("slow", 10), ExitCode.NUMERICAL_ERROR),
        (FileError("missing"), ExitCode.FILE_ERROR),
        (ValueError("x"), ExitCode.VALIDATION_ERROR),
        (ZeroDivisionError("x"), ExitCode.NUMERICAL_ERROR),
        (RuntimeError("x"), ExitCode.GENERAL_ERROR),
    ])
    def test_exit_codes(self, captured_handler: ErrorHandler, exc: Exception, code: ExitCode) -> None:
        assert captured_handler.handle_exception(exc, "test") == code

    def test_message_and_hints(self, captured_handler: ErrorHandler) -> None:
        captured_handler.handle_exception(ParseError("literals: expected a number", "1+", 2))
        output = captured_handler.console.file.getvalue()
        assert "position 2" in output
        assert "Suggestions" in output

    def test_validate_directory(self, captured_handler: ErrorHandler, tmp_path: Path) -> None:
        with pytest.raises(FileError):
            captured_handler.validate_directory(tmp_path / "absent")
        captured_handler.validate_directory(tmp_path / "made", create=True)
        assert (tmp_path / "made").is_dir()

    def test_log_file(self, captured_handler: ErrorHandler, tmp_path: Path) -> None:
        captured_handler.configure_logging(verbosity=2, log_dir=tmp_path / "logs")
        try:
            get_logger("lfm_recurrence.tests").debug("written to file")
            assert captured_handler.log_file is not None
            for handler in logging.getLogger(PACKAGE_LOGGER).handlers:
                handler.flush()
            assert "written to file" in captured_handler.log_file.read_text(encoding="utf-8")
        finally:
            package_logger = logging.getLogger(PACKAGE_LOGGER)
            for handler in list(package_logger.handlers):
                if isinstance(handler, logging.FileHandler):
                    package_logger.removeHandler(handler)
                    handler.close()
            captured_handler.configure_logging(verbosity=0)


class TestProcessingLogger:
    def test_lifecycle(self, package_caplog: pytest.LogCaptureFixture) -> None:
        package_caplog.set_level(logging.DEBUG)
        tracker = ProcessingLogger("sweep")
        tracker.start("2 x 2 cells")
        tracker.progress("row 1/2")
        elapsed = tracker.complete("done")
        assert elapsed >= 0
        assert "[START] 2 x 2 cells" in package_caplog.text
        assert "[PROGRESS] row 1/2" in package_caplog.text
        assert "[COMPLETE] done" in package_caplog.text

    def test_loggers_share_package_root(self) -> None:
        assert get_logger("lfm_recurrence.core.x").name == "lfm_recurrence.core.x"
        assert get_logger("outside").name == "lfm_recurrence.outside"
