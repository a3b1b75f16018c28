"""
Text literals for complex numbers, maps and series.

Complex literals: "x", "yi", "x+yi", "x-yi" (and "i", "-i", "x+i") with
decimal reals and optional exponents. No expression evaluation.

Map literals: four comma-separated complex literals "a,b,c,d".

Series literals: a JSON array of [re, im] pairs (plain numbers are accepted as
real coefficients).
"""

from __future__ import annotations

import json
import re
from typing import Any

from lfm_recurrence.core.moebius_core import MoebiusMap
from lfm_recurrence.core.weighted_space import WeightedSeries
from lfm_recurrence.utils.error_handler import ParseError

_REAL = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


class _ComplexScanner:
    """Single-pass scanner over one complex literal."""

    def __init__(self, text: str, offset: int = 0) -> None:
        self.text = text
        self.pos = 0
        self.offset = offset

    def error(self, message: str) -> ParseError:
        return ParseError(f"literals: {message}", self.text, self.offset + self.pos)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def sign(self) -> float:
        if not self.at_end() and self.text[self.pos] in "+-":
            value = -1.0 if self.text[self.pos] == "-" else 1.0
            self.pos += 1
            return value
        return 1.0

    def term(self) -> tuple[float, bool]:
        """Read a magnitude and whether it carried the imaginary unit."""
        match = _REAL.match(self.text, self.pos)
        magnitude = None
        if match:
            magnitude = float(match.group())
            self.pos = match.end()
        if not self.at_end() and self.text[self.pos] == "i":
            self.pos += 1
            return (1.0 if magnitude is None else magnitude), True
        if magnitude is None:
            raise self.error("expected a number or 'i'")
        return magnitude, False

    def parse(self) -> complex:
        if self.at_end():
            raise self.error("empty complex literal")

        first_sign = self.sign()
        first, imaginary = self.term()
        if imaginary:
            if not self.at_end():
                raise self.error("unexpected text after imaginary part")
            return complex(0.0, first_sign * first)
        if self.at_end():
            return complex(first_sign * first, 0.0)

        if self.text[self.pos] not in "+-":
            raise self.error(f"unexpected character {self.text[self.pos]!r}")
        second_sign = self.sign()
        second, imaginary = self.term()
        if not imaginary:
            raise self.error("expected imaginary part ending in 'i'")
        if not self.at_end():
            raise self.error("unexpected text after imaginary part")
        return complex(first_sign * first, second_sign * second)


def parse_complex(text: str, offset: int = 0) -> complex:
    """
    Parse a complex literal.

    Args:
        text: Literal such as "1.5", "-2i", "0.5-0.25i"
        offset: Position of text inside a larger literal (for error positions)

    Raises:
        ParseError: with the position of the first offending character
    """
    stripped = text.strip()
    lead = len(text) - len(text.lstrip())
    return _ComplexScanner(stripped, offset + lead).parse()


def format_real(x: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    return format(x, ".17g")


def format_complex(z: complex) -> str:
    """Format as "x+yi" / "x-yi" so that parse_complex round-trips exactly."""
    z = complex(z)
    imag = format_real(z.imag)
    if not imag.startswith("-"):
        imag = "+" + imag
    return f"{format_real(z.real)}{imag}i"


def parse_map_literal(text: str) -> MoebiusMap:
    """
    Parse "a,b,c,d" into a map.

    Raises:
        ParseError: for malformed literals
        DegenerateMapError: for ad - bc = 0
    """
    parts = text.split(",")
    if len(parts) != 4:
        position = len(text) if len(parts) < 4 else sum(len(p) + 1 for p in parts[:4]) - 1
        raise ParseError(f"literals: expected 4 comma-separated coefficients, got {len(parts)}",
                         text, position)

    coefficients = []
    offset = 0
    for part in parts:
        coefficients.append(parse_complex(part, offset))
        offset += len(part) + 1
    return MoebiusMap(*coefficients)


def format_map(phi: MoebiusMap) -> str:
    return ",".join(format_complex(x) for x in phi.coefficients)


def parse_series_literal(text: str, nu: float = 0.0) -> WeightedSeries:
    """
    Parse a JSON coefficient array.

    Raises:
        ParseError: for invalid JSON or entries that are not numbers or [re, im] pairs
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"literals: invalid series JSON ({e.msg})", text, e.pos) from e

    if not isinstance(data, list) or not data:
        raise ParseError("literals: series must be a non-empty JSON array", text, 0)

    coeffs = [_coefficient(entry, index, text) for index, entry in enumerate(data)]
    return WeightedSeries.from_coefficients(coeffs, nu)


def _coefficient(entry: Any, index: int, text: str) -> complex:
    if isinstance(entry, bool):
        raise ParseError(f"literals: coefficient {index} is a boolean", text, 0)
    if isinstance(entry, (int, float)):
        return complex(entry)
    if (isinstance(entry, list) and len(entry) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)):
        return complex(entry[0], entry[1])
    raise ParseError(f"literals: coefficient {index} must be a number or [re, im]", text, 0)
