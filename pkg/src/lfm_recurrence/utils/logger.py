"""
Structured logging utilities for lfm-recurrence.

All module loggers hang below the ``lfm_recurrence`` package logger, which owns a
single stderr console handler. Standard output stays reserved for reports.
"""

from __future__ import annotations

import logging
import sys
import time
from typing import Optional

PACKAGE_LOGGER = "lfm_recurrence"
CONSOLE_FORMAT = "%(levelname)-8s %(message)s"


def _package_logger() -> logging.Logger:
    """Return the package logger, attaching the console handler once."""
    root = logging.getLogger(PACKAGE_LOGGER)
    if not root.handlers:
        root.setLevel(logging.DEBUG)
        root.propagate = False

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(logging.WARNING)
        console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        root.addHandler(console_handler)
    return root


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger with consistent configuration.

    Args:
        name: Logger name (typically __name__ of the module)

    Returns:
        Logger below the package logger
    """
    root = _package_logger()
    if name == PACKAGE_LOGGER or name.startswith(PACKAGE_LOGGER + "."):
        return logging.getLogger(name)
    return root.getChild(name)


def set_console_level(level: int) -> None:
    """Set the level of the package console handler."""
    for handler in _package_logger().handlers:
        if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
            handler.setLevel(level)


class ProcessingLogger:
    """
    Logger for long-running experiments with duration tracking.

    Example:
        proc_log = ProcessingLogger("sweep")
        proc_log.start("Sweeping 2500 cells")
        proc_log.progress("ν row 10/50 done")
        proc_log.complete("Sweep finished")
    """

    def __init__(self, operation: str) -> None:
        """
        Initialize processing logger.

        Args:
            operation: Name of the operation being logged
        """
        self.operation = operation
        self.logger = get_logger(f"{PACKAGE_LOGGER}.processing.{operation}")
        self._start_time: Optional[float] = None

    def start(self, message: str = "") -> None:
        """Log operation start."""
        self._start_time = time.perf_counter()
        msg = message or f"Starting {self.operation}"
        self.logger.info(f"[START] {msg}")

    def progress(self, message: str) -> None:
        """Log progress update."""
        self.logger.debug(f"[PROGRESS] {message}")

    def complete(self, message: str = "") -> float:
        """Log operation completion and return the elapsed seconds."""
        elapsed = 0.0
        if self._start_time is not None:
            elapsed = time.perf_counter() - self._start_time

        msg = message or f"{self.operation} completed"
        self.logger.info(f"[COMPLETE] {msg} ({elapsed:.2f}s)")
        return elapsed

    def warning(self, message: str) -> None:
        """Log operation warning."""
        self.logger.warning(f"[WARNING] {message}")
