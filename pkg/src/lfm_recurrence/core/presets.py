"""
Registry of example symbols, one per recurrence-table family.

Preset names are accepted wherever a map literal "a,b,c,d" is.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from lfm_recurrence.core.moebius_core import MapCategory, MoebiusMap
from lfm_recurrence.utils.error_handler import ValidationError


@dataclass(frozen=True)
class Preset:
    """
    A named example symbol.

    Attributes:
        name: Registry key
        symbol: The map
        category: Family the map belongs to
        formula: Human-readable formula
    """

    name: str
    symbol: MoebiusMap
    category: MapCategory
    formula: str


PRESETS: dict[str, Preset] = {
    p.name: p
    for p in (
        Preset("hyperbolic-auto", MoebiusMap(3, 1, 1, 3),
               MapCategory.HYPERBOLIC_AUTOMORPHISM, "(3z+1)/(z+3)"),
        Preset("parabolic-auto", MoebiusMap(1 + 1j, -1, 1, -1 + 1j),
               MapCategory.PARABOLIC_AUTOMORPHISM, "((1+i)z-1)/(z+i-1)"),
        Preset("hyperbolic-nonauto", MoebiusMap(1, 1, 0, 2),
               MapCategory.HYPERBOLIC_NON_AUTOMORPHISM, "(1+z)/2"),
        Preset("parabolic-nonauto", MoebiusMap(0, 1, -1, 2),
               MapCategory.PARABOLIC_NON_AUTOMORPHISM, "1/(2-z)"),
        Preset("interior-exterior", MoebiusMap(-1, 0, 1, 2),
               MapCategory.INTERIOR_EXTERIOR, "-z/(2+z)"),
        Preset("interior-boundary", MoebiusMap(1, 0, -1, 2),
               MapCategory.INTERIOR_BOUNDARY, "z/(2-z)"),
        Preset("elliptic-irrational", MoebiusMap(complex(np.exp(1j * np.sqrt(2))), 0, 0, 1),
               MapCategory.ELLIPTIC_IRRATIONAL, "exp(i sqrt(2)) z"),
        Preset("elliptic-rational", MoebiusMap(complex(np.exp(2j * np.pi / 3)), 0, 0, 1),
               MapCategory.ELLIPTIC_RATIONAL, "exp(2 pi i/3) z"),
    )
}


def preset_names() -> list[str]:
    return list(PRESETS)


def get_preset(name: str) -> Preset:
    """
    Look up a preset by name.

    Raises:
        ValidationError: for unknown names (the message lists the known ones)
    """
    try:
        return PRESETS[name]
    except KeyError:
        raise ValidationError(
            f"presets: unknown preset {name!r}; known presets: {', '.join(PRESETS)}", field="preset"
        ) from None
