"""Core numerics: maps, weighted spaces, composition operators and the recurrence oracle."""

__all__ = [
    "config",
    "moebius_core",
    "weighted_space",
    "composition",
    "recurrence_oracle",
    "presets",
    "literals",
    "report_writer",
    "experiments",
]
