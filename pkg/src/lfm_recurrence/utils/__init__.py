"""
Utility modules for lfm-recurrence.
"""

from __future__ import annotations

__all__ = ["error_handler", "logger"]
