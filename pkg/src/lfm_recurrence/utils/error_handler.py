"""
Error handling for lfm-recurrence.

Every failure raised by the library is an ``AppError`` carrying the exit code the
command line reports for it:

- validation failures (bad literals, degenerate or non-self maps, unsupported
  symbol categories) exit with 2
- numerical failures (non-convergence, tolerance inconsistencies) exit with 3
"""

from __future__ import annotations

import logging
import os
from datetime import datetime
from enum import Enum, unique
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from rich.console import Console
from rich.traceback import install as install_rich_traceback

from lfm_recurrence.utils.logger import PACKAGE_LOGGER, get_logger, set_console_level

install_rich_traceback(show_locals=False, max_frames=10)


@unique
class ExitCode(Enum):
    """Exit codes of the command line."""

    SUCCESS = 0
    GENERAL_ERROR = 1
    VALIDATION_ERROR = 2
    NUMERICAL_ERROR = 3
    FILE_ERROR = 4


class AppError(Exception):
    """
    Base exception for application errors.

    Attributes:
        message: Human-readable, module-qualified error message
        exit_code: Exit code for the application
        details: Additional error details (optional)
    """

    def __init__(self, message: str, exit_code: ExitCode = ExitCode.GENERAL_ERROR,
                 details: Optional[str] = None) -> None:
        self.message = message
        self.exit_code = exit_code
        self.details = details
        super().__init__(self.message)


class ValidationError(AppError):
    """Input validation errors."""

    def __init__(self, message: str, field: Optional[str] = None,
                 exit_code: ExitCode = ExitCode.VALIDATION_ERROR) -> None:
        details = f"Field: {field}" if field else None
        self.field = field
        super().__init__(message, exit_code, details)


class ParseError(ValidationError):
    """Literal grammar errors, carrying the offending character position."""

    def __init__(self, message: str, text: str, position: int) -> None:
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}", field="literal")


class DegenerateMapError(ValidationError):
    """Coefficients with ad - bc = 0."""

    def __init__(self, message: str) -> None:
        super().__init__(message, field="coefficients")


class NotSelfMapError(ValidationError):
    """Maps that do not send the unit disk into itself."""

    def __init__(self, message: str) -> None:
        super().__init__(message, field="map")


class IdentityMapError(ValidationError):
    """Operations undefined for the identity map."""

    def __init__(self, message: str) -> None:
        super().__init__(message, field="map")


class UnsupportedCategoryError(ValidationError):
    """Operations restricted to some symbol categories."""

    def __init__(self, message: str, category: str) -> None:
        self.category = category
        super().__init__(message, field="category")


class WeightMismatchError(ValidationError):
    """Series living in different weighted spaces."""

    def __init__(self, message: str) -> None:
        super().__init__(message, field="nu")


class NumericalError(AppError):
    """Numerical failures (as opposed to invalid input)."""

    def __init__(self, message: str, details: Optional[str] = None) -> None:
        super().__init__(message, ExitCode.NUMERICAL_ERROR, details)


class ConvergenceError(NumericalError):
    """Iterations that did not converge within their budget."""

    def __init__(self, message: str, iterations: Optional[int] = None) -> None:
        self.iterations = iterations
        details = f"Iterations: {iterations}" if iterations is not None else None
        super().__init__(message, details)


class ConsistencyError(NumericalError):
    """Computed quantities contradicting known structure (signals tolerance failure)."""


class FileError(AppError):
    """File-related errors (not found, permission, etc.)."""

    def __init__(self, message: str, file_path: Optional[Path] = None) -> None:
        details = f"File: {file_path}" if file_path else None
        super().__init__(message, ExitCode.FILE_ERROR, details)


class ErrorHandler:
    """
    Maps exceptions raised by a command to an exit code and a console panel.

    Example:
        handler = ErrorHandler()
        try:
            report = run_command(command, spec, config)
        except Exception as e:
            exit_code = handler.handle_exception(e, "run_command")
            sys.exit(exit_code.value)
    """

    DETAILED_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(funcName)s:%(lineno)d | %(message)s"

    def __init__(self, console: Optional[Console] = None) -> None:
        self.console = console or Console(stderr=True)
        self.logger = get_logger(f"{PACKAGE_LOGGER}.{self.__class__.__name__}")
        self.log_file: Optional[Path] = None

    def configure_logging(self, verbosity: int = 0, log_dir: Optional[Path] = None) -> None:
        """
        Configure console verbosity and optional rotating file logging.

        Args:
            verbosity: 0 = warnings, 1 = info, 2+ = debug
            log_dir: Directory for a rotating log file (no file logging when None)
        """
        level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
        set_console_level(level)

        if log_dir is None:
            return

        log_dir = Path(log_dir)
        self.validate_directory(log_dir, create=True, writable=True)
        self.log_file = log_dir / f"lfm_recurrence_{datetime.now():%Y%m%d}.log"

        file_handler = RotatingFileHandler(
            self.log_file,
            maxBytes=5 * 1024 * 1024,
            backupCount=3,
            encoding="utf-8",
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(self.DETAILED_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
        logging.getLogger(PACKAGE_LOGGER).addHandler(file_handler)
        self.logger.debug(f"Logging configured. Log file: {self.log_file}")

    def handle_exception(self, exc: BaseException, context: str = "",
                         show_traceback: bool = False) -> ExitCode:
        """
        Handle exception with logging and user-friendly message.

        Args:
            exc: The exception to handle
            context: Additional context about where error occurred
            show_traceback: Whether to show full traceback to user

        Returns:
            Exit code for the application
        """
        context_str = f" in {context}" if context else ""
        self.logger.debug(f"Exception{context_str}: {type(exc).__name__}: {exc}", exc_info=True)

        exit_code, user_message = self._classify_exception(exc)
        self._show_error_message(user_message, exc, show_traceback)
        self._show_hints(exit_code)
        return exit_code

    @staticmethod
    def _classify_exception(exc: BaseException) -> tuple[ExitCode, str]:
        """Exit code and console message for an exception."""
        if isinstance(exc, AppError):
            return exc.exit_code, exc.message

        if isinstance(exc, FileNotFoundError):
            return ExitCode.FILE_ERROR, f"File not found: {exc.filename}"
        if isinstance(exc, PermissionError):
            return ExitCode.FILE_ERROR, f"Permission denied: {exc.filename}"
        if isinstance(exc, (ValueError, TypeError)):
            return ExitCode.VALIDATION_ERROR, f"Invalid input: {exc}"
        if isinstance(exc, (FloatingPointError, OverflowError, ZeroDivisionError)):
            return ExitCode.NUMERICAL_ERROR, f"Numerical failure: {exc}"
        if isinstance(exc, KeyboardInterrupt):
            return ExitCode.SUCCESS, "Operation cancelled by user"

        return ExitCode.GENERAL_ERROR, f"An unexpected error occurred: {exc}"

    def _show_error_message(self, message: str, exc: BaseException, show_traceback: bool) -> None:
        """Display user-friendly error message."""
        self.console.print(f"[red][ERROR] {message}[/red]", highlight=False, markup=True)

        if isinstance(exc, AppError) and exc.details:
            self.console.print(f"[dim]Details: {exc.details}[/dim]", highlight=False)

        if show_traceback:
            self.console.print_exception()

        if self.log_file is not None:
            self.console.print(f"[dim]Log file: {self.log_file}[/dim]", highlight=False)

    def _show_hints(self, exit_code: ExitCode) -> None:
        """Show hints for common errors."""
        hints = {
            ExitCode.VALIDATION_ERROR: [
                "Maps are given as --map \"a,b,c,d\" with complex literals x, yi, x+yi or x-yi",
                "Run `lfm-recurrence presets` to list the preset names",
                "Only self-maps of the unit disk with ad - bc != 0 are accepted",
            ],
            ExitCode.NUMERICAL_ERROR: [
                "Increase --max-iter or loosen --tol",
                "Check that the symbol is not elliptic when asking for a Denjoy-Wolff point",
            ],
            ExitCode.FILE_ERROR: [
                "Check that the --out directory exists and is writable",
            ],
        }

        if exit_code in hints:
            self.logger.debug("Hints for %s: %s", exit_code, hints[exit_code])
            self.console.print("[yellow]Suggestions:[/yellow]")
            for hint in hints[exit_code]:
                self.console.print(f"  [dim]• {hint}[/dim]", highlight=False, markup=True)

    def validate_directory(self, dir_path: Path, create: bool = False, writable: bool = False) -> None:
        """
        Validate directory exists and is accessible.

        Args:
            dir_path: Directory path to validate
            create: Whether to create the directory if it doesn't exist
            writable: Whether the directory must be writable

        Raises:
            FileError: If validation fails
        """
        self.logger.debug(f"Validating directory: {dir_path}")

        if not dir_path.exists():
            if not create:
                raise FileError(f"Directory not found: {dir_path}", file_path=dir_path)
            try:
                dir_path.mkdir(parents=True, exist_ok=True)
            except OSError as e:
                raise FileError(f"Cannot create directory: {dir_path} ({e})", file_path=dir_path) from e

        if not dir_path.is_dir():
            raise FileError(f"Not a directory: {dir_path}", file_path=dir_path)

        if writable and not os.access(dir_path, os.W_OK):
            raise FileError(f"Directory is not writable: {dir_path}", file_path=dir_path)


_error_handler: Optional[ErrorHandler] = None


def get_error_handler() -> ErrorHandler:
    """Get or create global error handler instance."""
    global _error_handler
    if _error_handler is None:
        _error_handler = ErrorHandler()
    return _error_handler
