"""
Unit Tests for the Recurrence Oracle.

Verdict examples, the per-family recurrence table at lambda = 1, spectrum
descriptions and the metamorphic relations the verdicts must satisfy.
"""

import math

import numpy as np
import pytest

from lfm_recurrence.core.moebius_core import (
    MapCategory,
    MoebiusMap,
    conjugate,
    disk_automorphism,
    inverse,
)
from lfm_recurrence.core.presets import PRESETS
from lfm_recurrence.core.recurrence_oracle import (
    Rule,
    SpectrumDescription,
    SpectrumFamily,
    circle_component_flag,
    decide,
    reference_verdict,
    spectrum_description,
)
from lfm_recurrence.utils.error_handler import UnsupportedCategoryError, ValidationError

NU_COLUMN = [-0.5, 0.0, 0.49, 0.5, 0.51, 1.5]

# Expected recurrence of C_phi (lambda = 1) at each nu of NU_COLUMN.
LAMBDA_ONE_TABLE = {
    "hyperbolic-auto": [True, True, True, False, False, False],
    "parabolic-auto": [True, True, True, False, False, False],
    "hyperbolic-nonauto": [True, True, True, False, False, False],
    "parabolic-nonauto": [False] * 6,
    "interior-exterior": [False] * 6,
    "interior-boundary": [False] * 6,
    "elliptic-irrational": [True] * 6,
    "elliptic-rational": [True] * 6,
}

NU_GRID = np.linspace(-1, 2, 50)
ABS_LAMBDA_GRID = np.linspace(0.1, 3, 50)


# =============================================================================
# Verdicts
# =============================================================================

class TestDecide:
    """Single verdicts."""

    @pytest.mark.parametrize("name, nu, lam, recurrent", [
        ("hyperbolic-auto", 0.0, 1, True),
        ("hyperbolic-auto", 0.0, 1.5, False),
        ("hyperbolic-nonauto", 0.5, 1.01, True),
        ("parabolic-nonauto", -0.5, 7, False),
        ("elliptic-rational", 3.0, 1j, True),
        ("parabolic-auto", 0.0, 1, True),
    ])
    def test_examples(self, name: str, nu: float, lam: complex, recurrent: bool) -> None:
        assert decide(PRESETS[name].symbol, nu, lam).recurrent is recurrent

    @pytest.mark.parametrize("name", sorted(LAMBDA_ONE_TABLE))
    def test_lambda_one_table(self, name: str) -> None:
        phi = PRESETS[name].symbol
        assert [decide(phi, nu, 1).recurrent for nu in NU_COLUMN] == LAMBDA_ONE_TABLE[name]

    def test_hyperbolic_bounds(self, hyperbolic_auto: MoebiusMap) -> None:
        verdict = decide(hyperbolic_auto, 0.0, 1)
        assert verdict.rule == Rule.HYPERBOLIC_AUTOMORPHISM
        assert verdict.mu == pytest.approx(0.5)
        assert verdict.gamma == pytest.approx(0.5)
        assert verdict.lower == pytest.approx(math.sqrt(0.5))
        assert verdict.upper == pytest.approx(math.sqrt(2))
        assert not verdict.boundary

    def test_loxodromic_never_recurrent(self) -> None:
        verdict = decide(MoebiusMap(0.5j, 0, 0, 1), -1.0, 1)
        assert verdict.category == MapCategory.INTERIOR_EXTERIOR
        assert verdict.rule == Rule.INTERIOR_FIXED_POINT
        assert not verdict.recurrent

    def test_identity_extension(self) -> None:
        verdict = decide(MoebiusMap.identity(), 2.0, 1j)
        assert verdict.recurrent
        assert verdict.rule == Rule.IDENTITY
        assert "extension" in verdict.detail
        assert not decide(MoebiusMap.identity(), 2.0, 1.1).recurrent

    def test_zero_lambda_rejected(self, hyperbolic_auto: MoebiusMap) -> None:
        with pytest.raises(ValidationError):
            decide(hyperbolic_auto, 0.0, 0)

    def test_boundary_flag_and_warning(self, hyperbolic_auto: MoebiusMap,
                                       package_caplog: pytest.LogCaptureFixture) -> None:
        verdict = decide(hyperbolic_auto, 0.0, math.sqrt(2))
        assert verdict.boundary
        assert "threshold" in package_caplog.text

    def test_never_rules_not_flagged(self, parabolic_nonauto: MoebiusMap) -> None:
        assert not decide(parabolic_nonauto, 0.5, 1).boundary

    def test_spectral_obstruction(self, hyperbolic_nonauto: MoebiusMap, parabolic_nonauto: MoebiusMap,
                                  hyperbolic_auto: MoebiusMap) -> None:
        assert decide(hyperbolic_nonauto, 0.0, 0.5).spectral_obstruction is False
        assert decide(hyperbolic_nonauto, 2.0, 1).spectral_obstruction is True
        assert decide(parabolic_nonauto, 0.0, 1).spectral_obstruction is True
        assert decide(hyperbolic_nonauto, 0.0, 1).spectral_obstruction is None
        assert decide(hyperbolic_auto, 0.0, 5).spectral_obstruction is None

    def test_to_dict(self, hyperbolic_nonauto: MoebiusMap) -> None:
        data = decide(hyperbolic_nonauto, 0.0, 2).to_dict()
        assert data["recurrent"] is True
        assert data["rule"] == "HyperbolicNonAutomorphism"
        assert data["bounds"]["lower"] == pytest.approx(math.sqrt(0.5))
        assert data["bounds"]["upper"] is None


class TestReferenceVerdict:
    """The condition table evaluated directly."""

    def test_hyperbolic_needs_mu(self) -> None:
        with pytest.raises(ValidationError):
            reference_verdict(MapCategory.HYPERBOLIC_AUTOMORPHISM, None, 0.0, 1.0)

    def test_non_automorphism_at_half(self) -> None:
        """nu = 1/2 admits exactly |lambda| > 1."""
        category = MapCategory.HYPERBOLIC_NON_AUTOMORPHISM
        assert reference_verdict(category, 0.5, 0.5, 1.01).recurrent
        assert not reference_verdict(category, 0.5, 0.5, 0.99).recurrent

    @pytest.mark.parametrize("category", [MapCategory.HYPERBOLIC_AUTOMORPHISM,
                                          MapCategory.HYPERBOLIC_NON_AUTOMORPHISM])
    def test_monotone_in_nu(self, category: MapCategory) -> None:
        """Recurrence at nu implies recurrence at every smaller nu."""
        for r in ABS_LAMBDA_GRID:
            column = [reference_verdict(category, 0.5, nu, r).recurrent for nu in NU_GRID]
            first_false = column.index(False) if False in column else len(column)
            assert not any(column[first_false:])


# =============================================================================
# Spectrum
# =============================================================================

class TestSpectrum:
    """Spectrum parameters and the off-circle component flag."""

    def test_disk_plus_points(self, hyperbolic_nonauto: MoebiusMap) -> None:
        desc = spectrum_description(hyperbolic_nonauto, 0.0, k_max=4)
        assert desc.family == SpectrumFamily.HYPERBOLIC_NON_AUTO_DISK_PLUS_POINTS
        assert desc.gamma == pytest.approx(0.5)
        assert desc.disk_radius == pytest.approx(math.sqrt(2))
        assert desc.discrete_points == pytest.approx([1, 0.5, 0.25, 0.125, 0.0625])
        assert not circle_component_flag(desc)

    def test_disk_shrinks_for_large_nu(self, hyperbolic_nonauto: MoebiusMap) -> None:
        assert spectrum_description(hyperbolic_nonauto, 1.0).disk_radius == pytest.approx(math.sqrt(0.5))
        desc = spectrum_description(hyperbolic_nonauto, 2.0)
        assert desc.disk_radius == pytest.approx(0.5**1.5)
        assert circle_component_flag(desc)

    def test_spiral(self, parabolic_nonauto: MoebiusMap) -> None:
        desc = spectrum_description(parabolic_nonauto, 0.3)
        assert desc.family == SpectrumFamily.PARABOLIC_NON_AUTO_SPIRAL
        assert desc.includes_zero
        assert desc.disk_radius is None
        assert circle_component_flag(desc)

    def test_flag_without_disk(self) -> None:
        desc = SpectrumDescription(SpectrumFamily.PARABOLIC_NON_AUTO_SPIRAL, 0.5)
        assert not circle_component_flag(desc)

    @pytest.mark.parametrize("name", ["hyperbolic-auto", "parabolic-auto", "interior-boundary",
                                      "elliptic-rational"])
    def test_unsupported_families(self, name: str) -> None:
        with pytest.raises(UnsupportedCategoryError):
            spectrum_description(PRESETS[name].symbol, 0.0)


# =============================================================================
# Metamorphic relations
# =============================================================================

class TestMetamorphic:
    """Relations between verdicts over the sweep grid."""

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["hyperbolic-auto", "parabolic-auto", "elliptic-irrational"])
    def test_inverse_symmetry(self, name: str) -> None:
        """An invertible operator is recurrent iff its inverse is."""
        phi = PRESETS[name].symbol
        phi_inverse = inverse(phi)
        for nu in NU_GRID[::7]:
            for r in ABS_LAMBDA_GRID:
                forward = decide(phi, float(nu), r)
                backward = decide(phi_inverse, float(nu), 1 / r)
                if forward.boundary or backward.boundary:
                    continue
                assert forward.recurrent == backward.recurrent

    @pytest.mark.parametrize("name", ["hyperbolic-auto", "hyperbolic-nonauto", "parabolic-auto"])
    def test_modulus_only(self, name: str) -> None:
        phi = PRESETS[name].symbol
        for nu in NU_GRID[::5]:
            for r in ABS_LAMBDA_GRID[::5]:
                base = decide(phi, float(nu), r).recurrent
                for theta in (0.5, 2.0, -3.0):
                    assert decide(phi, float(nu), r * np.exp(1j * theta)).recurrent == base

    @pytest.mark.parametrize("name", ["hyperbolic-auto", "hyperbolic-nonauto", "interior-exterior",
                                      "elliptic-rational"])
    def test_conjugation_invariance(self, name: str) -> None:
        phi = PRESETS[name].symbol
        moved = conjugate(phi, disk_automorphism(0.8, 0.3 - 0.2j))
        for nu in NU_COLUMN:
            for r in (0.5, 0.9, 1.0, 1.2, 2.0):
                original = decide(phi, nu, r)
                if original.boundary:
                    continue
                assert decide(moved, nu, r).recurrent == original.recurrent
