"""
Unit Tests for Literal Parsing and Formatting.

Complex literals, map literals and JSON series literals.
"""

import pytest

from lfm_recurrence.core.literals import (
    format_complex,
    format_map,
    format_real,
    parse_complex,
    parse_map_literal,
    parse_series_literal,
)
from lfm_recurrence.core.moebius_core import MoebiusMap
from lfm_recurrence.core.presets import PRESETS, get_preset
from lfm_recurrence.core.weighted_space import WeightedSeries
from lfm_recurrence.utils.error_handler import DegenerateMapError, ParseError, ValidationError


class TestParseComplex:
    """Grammar x | yi | x+yi | x-yi."""

    @pytest.mark.parametrize("text, expected", [
        ("1", 1),
        ("-2.5", -2.5),
        ("0.5i", 0.5j),
        ("-2i", -2j),
        ("i", 1j),
        ("-i", -1j),
        ("1+i", 1 + 1j),
        ("0.5-0.25i", 0.5 - 0.25j),
        ("1e-3+2E2i", 0.001 + 200j),
        (".5", 0.5),
        ("  3  ", 3),
    ])
    def test_valid(self, text: str, expected: complex) -> None:
        assert parse_complex(text) == expected

    @pytest.mark.parametrize("text, position", [
        ("", 0),
        ("1x", 1),
        ("1+", 2),
        ("1+2", 3),
        ("2i3", 2),
        ("abc", 0),
    ])
    def test_error_positions(self, text: str, position: int) -> None:
        with pytest.raises(ParseError) as excinfo:
            parse_complex(text)
        assert excinfo.value.position == position

    def test_no_expression_evaluation(self) -> None:
        with pytest.raises(ParseError):
            parse_complex("2*3")


class TestMapLiterals:
    """Four comma-separated coefficients."""

    def test_parse(self) -> None:
        phi = parse_map_literal("3,1,1,3")
        assert phi.projectively_equal(MoebiusMap(3, 1, 1, 3))

    def test_complex_coefficients(self) -> None:
        phi = parse_map_literal("1+i, -1, 1, -1+i")
        assert phi.coefficients == (1 + 1j, -1, 1, -1 + 1j)

    def test_degenerate(self) -> None:
        with pytest.raises(DegenerateMapError):
            parse_map_literal("1,1,0,0")

    @pytest.mark.parametrize("text, position", [
        ("1,2,3", 5),
        ("1,2,x,4", 4),
        ("1, 2,3,4y", 8),
    ])
    def test_error_positions(self, text: str, position: int) -> None:
        with pytest.raises(ParseError) as excinfo:
            parse_map_literal(text)
        assert excinfo.value.position == position

    def test_round_trip_presets(self, preset_name: str) -> None:
        phi = PRESETS[preset_name].symbol
        assert parse_map_literal(format_map(phi)).coefficients == phi.coefficients

    def test_unknown_preset_lists_known_names(self) -> None:
        with pytest.raises(ValidationError) as excinfo:
            get_preset("nope")
        assert "hyperbolic-auto" in excinfo.value.message


class TestFormatting:
    def test_format_real(self) -> None:
        assert format_real(0.1) == "0.10000000000000001"
        assert float(format_real(1 / 3)) == 1 / 3

    def test_format_complex(self) -> None:
        assert format_complex(1 - 2j) == "1-2i"
        assert format_complex(0.5j) == "0+0.5i"
        assert parse_complex(format_complex(-1e-300 + 3.25j)) == -1e-300 + 3.25j


class TestSeriesLiterals:
    """JSON arrays of numbers or [re, im] pairs."""

    def test_pairs_and_numbers(self) -> None:
        f = parse_series_literal("[[1, 0], [0, 2], 3]", nu=0.5)
        assert f == WeightedSeries.from_coefficients([1, 2j, 3], 0.5)

    @pytest.mark.parametrize("text", ["[]", "{}", "[[1, 2, 3]]", "[true]", '["1"]'])
    def test_rejected(self, text: str) -> None:
        with pytest.raises(ParseError):
            parse_series_literal(text)

    def test_invalid_json_position(self) -> None:
        with pytest.raises(ParseError) as excinfo:
            parse_series_literal("[1, 2,")
        assert excinfo.value.position == 6
