"""
Main entry point for lfm-recurrence.

Run with: python -m lfm_recurrence <command> [options]
"""

from __future__ import annotations

import sys
from typing import Optional, Sequence

from lfm_recurrence import __version__
from lfm_recurrence.cli import run
from lfm_recurrence.utils.error_handler import ExitCode, get_error_handler


def main(argv: Optional[Sequence[str]] = None) -> ExitCode:
    """
    Main entry point with error handling.

    Returns:
        Exit code for the application
    """
    handler = get_error_handler()
    handler.logger.debug(f"lfm-recurrence v{__version__} starting")

    try:
        exit_code = run(argv)
        handler.logger.debug(f"Exited with code: {exit_code.value}")
        return exit_code

    except KeyboardInterrupt:
        handler.logger.info("Cancelled by user (KeyboardInterrupt)")
        handler.console.print("\n[yellow][CANCELLED] Operation cancelled by user[/yellow]")
        return ExitCode.SUCCESS

    except Exception as e:
        return handler.handle_exception(e, "main")


def console_main() -> None:
    """Console-script wrapper that exits with the numeric code."""
    sys.exit(main().value)


if __name__ == "__main__":
    console_main()
