"""
Recurrence of lambda C_phi on S_nu as a decision procedure.

The verdict depends on the symbol family of phi, the multiplier mu at its
Denjoy-Wolff point, nu and |lambda| only. With gamma = (1 - 2 nu)/2:

    Identity                     |lambda| = 1
    Elliptic automorphism        |lambda| = 1, any nu
    Interior fixed point         never (any other map with an interior fixed point)
    Hyperbolic automorphism      nu < 1/2 and mu^gamma < |lambda| < mu^-gamma
    Parabolic automorphism       nu < 1/2 and |lambda| = 1
    Hyperbolic non-automorphism  nu <= 1/2 and |lambda| > mu^gamma
    Parabolic non-automorphism   never

Inequalities are evaluated exactly as stated; verdicts within eps_dec of a
threshold (or of nu = 1/2) carry a boundary flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum, unique
from typing import Any, Optional

from lfm_recurrence.core.config import Tolerances, get_default_tolerances
from lfm_recurrence.core.moebius_core import MapCategory, MoebiusMap, classify
from lfm_recurrence.utils.error_handler import UnsupportedCategoryError, ValidationError
from lfm_recurrence.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_K_MAX = 16


@unique
class Rule(Enum):
    """The condition template a verdict was decided by."""

    IDENTITY = "Identity"
    ELLIPTIC_AUTOMORPHISM = "EllipticAutomorphism"
    INTERIOR_FIXED_POINT = "InteriorFixedPoint"
    HYPERBOLIC_AUTOMORPHISM = "HyperbolicAutomorphism"
    PARABOLIC_AUTOMORPHISM = "ParabolicAutomorphism"
    HYPERBOLIC_NON_AUTOMORPHISM = "HyperbolicNonAutomorphism"
    PARABOLIC_NON_AUTOMORPHISM = "ParabolicNonAutomorphism"

    def __str__(self) -> str:
        return self.value


@unique
class SpectrumFamily(Enum):
    HYPERBOLIC_NON_AUTO_DISK_PLUS_POINTS = "HyperbolicNonAutoDiskPlusPoints"
    PARABOLIC_NON_AUTO_SPIRAL = "ParabolicNonAutoSpiral"

    def __str__(self) -> str:
        return self.value


@dataclass
class RecurrenceVerdict:
    """
    Recurrence decision for one (phi, nu, lambda).

    Attributes:
        recurrent: Whether lambda C_phi is recurrent on S_nu
        rule: Condition template applied
        detail: The condition instantiated with the actual numbers
        category: Symbol family
        gamma: (1 - 2 nu)/2 for the rules that use it
        mu: Multiplier at the Denjoy-Wolff point (hyperbolic rules)
        lower: Lower |lambda| threshold, if any
        upper: Upper |lambda| threshold, if any
        boundary: Within eps_dec of a threshold or of nu = 1/2
        spectral_obstruction: For non-recurrent non-automorphism symbols, whether
            the spectrum of C_phi has a component off the unit circle
    """

    recurrent: bool
    rule: Rule
    detail: str
    category: MapCategory
    gamma: Optional[float] = None
    mu: Optional[float] = None
    lower: Optional[float] = None
    upper: Optional[float] = None
    boundary: bool = False
    spectral_obstruction: Optional[bool] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "recurrent": self.recurrent,
            "rule": str(self.rule),
            "detail": self.detail,
            "category": str(self.category),
            "gamma": self.gamma,
            "mu": self.mu,
            "bounds": {"lower": self.lower, "upper": self.upper},
            "boundary": self.boundary,
            "spectral_obstruction": self.spectral_obstruction,
        }


@dataclass
class SpectrumDescription:
    """
    Spectrum of C_phi for non-automorphism symbols with a boundary Denjoy-Wolff point.

    Attributes:
        family: Disk plus points (hyperbolic) or spiral (parabolic)
        gamma: (1 - 2 nu)/2
        disk_radius: mu^-gamma; None for the spiral family
        discrete_points: mu^k for k = 0..k_max
        includes_zero: {0} is an isolated component (spiral family)
    """

    family: SpectrumFamily
    gamma: float
    disk_radius: Optional[float] = None
    discrete_points: list[float] = field(default_factory=list)
    includes_zero: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": str(self.family),
            "gamma": self.gamma,
            "disk_radius": self.disk_radius,
            "discrete_points": list(self.discrete_points),
            "includes_zero": self.includes_zero,
        }


def _near(x: float, threshold: float, tolerances: Tolerances) -> bool:
    return abs(x - threshold) <= tolerances.eps_dec


def reference_verdict(category: MapCategory, mu: Optional[float], nu: float, abs_lambda: float,
                      tolerances: Optional[Tolerances] = None) -> RecurrenceVerdict:
    """
    Evaluate the recurrence conditions for a symbol family.

    Args:
        category: Symbol family
        mu: Multiplier at the Denjoy-Wolff point (required for hyperbolic families)
        nu: Weight parameter
        abs_lambda: |lambda|

    Returns:
        RecurrenceVerdict (spectral_obstruction left unset)
    """
    tol = tolerances or get_default_tolerances()
    gamma = (1 - 2 * nu) / 2
    on_circle = _near(abs_lambda, 1.0, tol)
    nu_boundary = _near(nu, 0.5, tol)

    if category == MapCategory.IDENTITY:
        return RecurrenceVerdict(
            on_circle, Rule.IDENTITY,
            f"identity symbol (extension): recurrent iff |lambda| = 1; |lambda| = {abs_lambda:.17g}",
            category,
        )

    if category.is_elliptic:
        return RecurrenceVerdict(
            on_circle, Rule.ELLIPTIC_AUTOMORPHISM,
            f"elliptic automorphism: recurrent iff |lambda| = 1 for every nu; |lambda| = {abs_lambda:.17g}",
            category,
        )

    if category in (MapCategory.INTERIOR_EXTERIOR, MapCategory.INTERIOR_BOUNDARY):
        return RecurrenceVerdict(
            False, Rule.INTERIOR_FIXED_POINT,
            "interior fixed point without elliptic automorphism: never recurrent",
            category,
        )

    if category == MapCategory.PARABOLIC_NON_AUTOMORPHISM:
        return RecurrenceVerdict(
            False, Rule.PARABOLIC_NON_AUTOMORPHISM,
            "parabolic non-automorphism: never recurrent on any S_nu",
            category,
        )

    if category == MapCategory.PARABOLIC_AUTOMORPHISM:
        return RecurrenceVerdict(
            nu < 0.5 and on_circle, Rule.PARABOLIC_AUTOMORPHISM,
            f"parabolic automorphism: nu < 1/2 and |lambda| = 1; nu = {nu:.17g}, |lambda| = {abs_lambda:.17g}",
            category, gamma=gamma, boundary=nu_boundary,
        )

    if mu is None or not 0 < mu < 1:
        raise ValidationError(f"recurrence_oracle: hyperbolic rules need 0 < mu < 1, got {mu}", field="mu")

    lower = mu**gamma
    if category == MapCategory.HYPERBOLIC_AUTOMORPHISM:
        upper = mu**-gamma
        recurrent = nu < 0.5 and lower < abs_lambda < upper
        return RecurrenceVerdict(
            recurrent, Rule.HYPERBOLIC_AUTOMORPHISM,
            f"hyperbolic automorphism: nu < 1/2 and mu^gamma < |lambda| < mu^-gamma; "
            f"mu = {mu:.17g}, gamma = {gamma:.17g}, {lower:.17g} < {abs_lambda:.17g} < {upper:.17g}",
            category, gamma=gamma, mu=mu, lower=lower, upper=upper,
            boundary=nu_boundary or _near(abs_lambda, lower, tol) or _near(abs_lambda, upper, tol),
        )

    if category == MapCategory.HYPERBOLIC_NON_AUTOMORPHISM:
        recurrent = nu <= 0.5 and abs_lambda > lower
        return RecurrenceVerdict(
            recurrent, Rule.HYPERBOLIC_NON_AUTOMORPHISM,
            f"hyperbolic non-automorphism: nu <= 1/2 and |lambda| > mu^gamma; "
            f"mu = {mu:.17g}, gamma = {gamma:.17g}, {abs_lambda:.17g} > {lower:.17g}",
            category, gamma=gamma, mu=mu, lower=lower,
            boundary=nu_boundary or _near(abs_lambda, lower, tol),
        )

    raise UnsupportedCategoryError(f"recurrence_oracle: no rule for {category}", str(category))


def decide(phi: MoebiusMap, nu: float, lam: complex,
           tolerances: Optional[Tolerances] = None) -> RecurrenceVerdict:
    """
    Decide recurrence of lambda C_phi on S_nu.

    Raises:
        ValidationError: for lambda = 0 or non-finite nu
        NotSelfMapError: if phi is not a self-map of the disk
    """
    tol = tolerances or get_default_tolerances()
    lam = complex(lam)
    if lam == 0:
        raise ValidationError("recurrence_oracle: lambda must be nonzero", field="lambda")
    if not math.isfinite(nu):
        raise ValidationError(f"recurrence_oracle: nu must be finite, got {nu}", field="nu")

    classification = classify(phi, tol)
    category = classification.category
    mu = classification.derivative_at_attractive.real if category in (
        MapCategory.HYPERBOLIC_AUTOMORPHISM, MapCategory.HYPERBOLIC_NON_AUTOMORPHISM) else None

    verdict = reference_verdict(category, mu, nu, abs(lam), tol)

    if not verdict.recurrent and category in (
            MapCategory.HYPERBOLIC_NON_AUTOMORPHISM, MapCategory.PARABOLIC_NON_AUTOMORPHISM):
        verdict.spectral_obstruction = circle_component_flag(
            spectrum_description(phi, nu, tolerances=tol), tol.eps_dec)

    if verdict.boundary:
        logger.warning(f"Verdict for nu={nu}, |lambda|={abs(lam)} lies on a threshold ({verdict.rule})")
    logger.debug(f"decide: {verdict.rule} -> recurrent={verdict.recurrent}")
    return verdict


def spectrum_description(phi: MoebiusMap, nu: float, k_max: int = DEFAULT_K_MAX,
                         tolerances: Optional[Tolerances] = None) -> SpectrumDescription:
    """
    Parameters of the spectrum of C_phi on S_nu.

    Hyperbolic non-automorphisms: the disk |alpha| <= mu^-gamma together with
    the points mu^k. Parabolic non-automorphisms: a spiral {e^-at} plus {0}
    with the rate left symbolic.

    Raises:
        UnsupportedCategoryError: for every other family
    """
    if k_max < 0:
        raise ValidationError(f"recurrence_oracle: k_max must be >= 0, got {k_max}", field="k_max")
    classification = classify(phi, tolerances)
    category = classification.category
    gamma = (1 - 2 * nu) / 2

    if category == MapCategory.HYPERBOLIC_NON_AUTOMORPHISM:
        mu = classification.derivative_at_attractive.real
        return SpectrumDescription(
            family=SpectrumFamily.HYPERBOLIC_NON_AUTO_DISK_PLUS_POINTS,
            gamma=gamma,
            disk_radius=mu**-gamma,
            discrete_points=[mu**k for k in range(k_max + 1)],
        )

    if category == MapCategory.PARABOLIC_NON_AUTOMORPHISM:
        return SpectrumDescription(
            family=SpectrumFamily.PARABOLIC_NON_AUTO_SPIRAL,
            gamma=gamma,
            includes_zero=True,
        )

    raise UnsupportedCategoryError(
        f"recurrence_oracle: spectrum description is not available for {category}", str(category))


def circle_component_flag(desc: SpectrumDescription, eps: float = 1e-12) -> bool:
    """True iff the described spectrum has a component disjoint from the unit circle."""
    if desc.includes_zero:
        return True
    if desc.disk_radius is None:
        return False
    if desc.disk_radius < 1 - eps:
        return True
    return any(abs(abs(p) - 1) > eps and abs(p) > desc.disk_radius + eps for p in desc.discrete_points)
