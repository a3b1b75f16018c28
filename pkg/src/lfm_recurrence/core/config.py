"""
Configuration module for lfm-recurrence.

Defines numerical tolerances and the run configuration of the command line.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields
from enum import Enum, unique
from pathlib import Path
from typing import Any, Optional

from lfm_recurrence.utils.error_handler import FileError, ValidationError
from lfm_recurrence.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_DEGREE = 256
MAX_SECTION_SIZE = 512


@unique
class OutputFormat(Enum):
    """Report serialization formats."""

    JSON = "json"
    CSV = "csv"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Tolerances:
    """
    Numerical tolerances shared by every module.

    Attributes:
        eps_class: Double-root discriminant, |μ| - 1 and Im μ tests
        eps_loc: Fixed-point location (|p| - 1) and self-map slack
        eps_rot: Rational-rotation detection (scaled by 1/q)
        q_max: Largest rotation period searched for
        eps_dec: Recurrence thresholds and the |λ| = 1 test
        identity_snap: Iterates this close to the identity become the exact identity
    """

    eps_class: float = 1e-9
    eps_loc: float = 1e-9
    eps_rot: float = 1e-12
    q_max: int = 10**6
    eps_dec: float = 1e-12
    identity_snap: float = 1e-12

    def __post_init__(self) -> None:
        for item in fields(self):
            value = getattr(self, item.name)
            if not (value > 0 and math.isfinite(value)):
                raise ValidationError(f"config: tolerance {item.name} must be positive, got {value}",
                                      field=item.name)


_default_tolerances = Tolerances()


def get_default_tolerances() -> Tolerances:
    """Get the module-wide default tolerances."""
    return _default_tolerances


def _complex_to_json(value: complex) -> list[float]:
    return [value.real, value.imag]


def _complex_from_json(value: Any) -> complex:
    if isinstance(value, (list, tuple)):
        re, im = value
        return complex(float(re), float(im))
    return complex(value)


@dataclass
class RunConfig:
    """
    Parameters of one command-line experiment.

    Attributes:
        nu: Weight parameter ν of the space S_ν
        lam: Scalar λ of the operator λ·C_φ
        degree: Truncation degree N of series
        max_iter: Iteration budget K (orbit length, Denjoy-Wolff doublings)
        tol: Convergence tolerance
        fmt: Output format (json or csv), None for the command default
        size: Dimension of finite matrix sections
        w: Point of the reproducing kernel
        k_max: Number of discrete spectrum points reported
        workers: Parallel workers for sweeps
        modulo_constants: Measure orbit distances modulo constants
        tolerances: Numerical tolerances
    """

    nu: float = 0.0
    lam: complex = 1 + 0j
    degree: int = DEFAULT_DEGREE
    max_iter: int = 1000
    tol: float = 1e-9
    fmt: Optional[str] = None
    size: int = 16
    w: complex = 0.5 + 0j
    k_max: int = 16
    workers: int = 1
    modulo_constants: bool = False
    tolerances: Tolerances = field(default_factory=get_default_tolerances)

    def __post_init__(self) -> None:
        """Validate settings after initialization."""
        self.lam = complex(self.lam)
        self.w = complex(self.w)
        self.nu = float(self.nu)

        if isinstance(self.tolerances, dict):
            self.tolerances = Tolerances(**self.tolerances)

        valid_formats = [f.value for f in OutputFormat]
        if self.fmt is not None and self.fmt not in valid_formats:
            raise ValidationError(f"config: format must be one of {valid_formats}, got {self.fmt!r}",
                                  field="format")
        if not math.isfinite(self.nu):
            raise ValidationError("config: nu must be finite", field="nu")
        if self.degree < 1:
            raise ValidationError(f"config: degree must be >= 1, got {self.degree}", field="degree")
        if self.max_iter < 1:
            raise ValidationError(f"config: max_iter must be >= 1, got {self.max_iter}", field="max_iter")
        if not self.tol > 0:
            raise ValidationError(f"config: tol must be > 0, got {self.tol}", field="tol")
        if not 1 <= self.size <= MAX_SECTION_SIZE:
            raise ValidationError(f"config: size must be in [1, {MAX_SECTION_SIZE}], got {self.size}",
                                  field="size")
        if not abs(self.w) < 1:
            raise ValidationError(f"config: kernel point must satisfy |w| < 1, got {self.w}", field="w")
        if self.k_max < 0:
            raise ValidationError(f"config: k_max must be >= 0, got {self.k_max}", field="k_max")
        if self.workers < 1:
            logger.warning("workers must be positive, using 1")
            self.workers = 1

    def to_dict(self) -> dict[str, Any]:
        """Convert the configuration to a JSON-compatible dictionary."""
        data = asdict(self)
        data["lam"] = _complex_to_json(self.lam)
        data["w"] = _complex_to_json(self.w)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunConfig:
        """Create a configuration from a dictionary, ignoring unknown keys."""
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        for key in ("lam", "w"):
            if key in known:
                known[key] = _complex_from_json(known[key])
        return cls(**known)

    def save(self, file_path: Path) -> None:
        """
        Save the configuration to a JSON file.

        Args:
            file_path: Path to save the configuration
        """
        file_path = Path(file_path)
        file_path.parent.mkdir(parents=True, exist_ok=True)

        with open(file_path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)

        logger.info(f"Configuration saved to {file_path}")

    @classmethod
    def load(cls, file_path: Path) -> RunConfig:
        """
        Load a configuration from a JSON file.

        Args:
            file_path: Path to load the configuration from

        Returns:
            Loaded RunConfig
        """
        file_path = Path(file_path)
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except OSError as e:
            raise FileError(f"config: cannot read {file_path}: {e}", file_path=file_path) from e
        except json.JSONDecodeError as e:
            raise ValidationError(f"config: {file_path} is not valid JSON: {e}", field="config") from e

        config = cls.from_dict(data)
        logger.info(f"Configuration loaded from {file_path}")
        return config

    def replace(self, **changes: Optional[Any]) -> RunConfig:
        """Return a copy with the non-None changes applied."""
        data = {item.name: getattr(self, item.name) for item in fields(self)}
        data.update({k: v for k, v in changes.items() if v is not None})
        return RunConfig(**data)
