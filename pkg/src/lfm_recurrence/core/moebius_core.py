"""
Linear fractional self-maps of the unit disk.

A map phi(z) = (az + b)/(cz + d) is stored by its raw coefficients. All equality
is projective: two coefficient quadruples describe the same map when they are
proportional, which is tested by cross-multiplication instead of normalizing
the determinant (no square-root branch cuts).

Classification follows the fixed points on the extended plane:

- one fixed point: parabolic (the point lies on the unit circle, phi' = 1 there)
- two fixed points with |phi'| = 1: elliptic (rotation about an interior point)
- two fixed points with phi' real positive: hyperbolic
- anything else: loxodromic (interior attractive point, exterior repelling point)

Example:
    phi = MoebiusMap(3, 1, 1, 3)
    classify(phi).category
    # MapCategory.HYPERBOLIC_AUTOMORPHISM
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum, unique
from fractions import Fraction
from typing import Any, Optional, Union

import numpy as np

from lfm_recurrence.core.config import Tolerances, get_default_tolerances
from lfm_recurrence.utils.error_handler import (
    ConsistencyError,
    ConvergenceError,
    DegenerateMapError,
    IdentityMapError,
    NotSelfMapError,
    UnsupportedCategoryError,
    ValidationError,
)
from lfm_recurrence.utils.logger import get_logger

logger = get_logger(__name__)

# Sample points whose images determine phi(T).
CIRCLE_SAMPLES = (1 + 0j, 1j, -1 + 0j)

# A normalized map with |c| below this is affine: its second fixed point is infinity.
AFFINE_CUTOFF = float(np.finfo(float).eps)


@unique
class Location(Enum):
    """Position of a point relative to the unit circle."""

    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"
    INFINITY = "infinity"

    def __str__(self) -> str:
        return self.value

    @property
    def is_outside(self) -> bool:
        """Outside the closed disk (including the point at infinity)."""
        return self in (Location.EXTERIOR, Location.INFINITY)


@unique
class MapCategory(Enum):
    """The eight symbol families of the recurrence tables, plus the identity."""

    IDENTITY = "Identity"
    ELLIPTIC_RATIONAL = "EllipticRationalRotation"
    ELLIPTIC_IRRATIONAL = "EllipticIrrationalRotation"
    PARABOLIC_AUTOMORPHISM = "ParabolicAutomorphism"
    PARABOLIC_NON_AUTOMORPHISM = "ParabolicNonAutomorphism"
    HYPERBOLIC_AUTOMORPHISM = "HyperbolicAutomorphism"
    HYPERBOLIC_NON_AUTOMORPHISM = "HyperbolicNonAutomorphism"
    INTERIOR_EXTERIOR = "InteriorExterior"
    INTERIOR_BOUNDARY = "InteriorBoundary"

    def __str__(self) -> str:
        return self.value

    @property
    def is_elliptic(self) -> bool:
        return self in (MapCategory.ELLIPTIC_RATIONAL, MapCategory.ELLIPTIC_IRRATIONAL)

    @property
    def is_parabolic(self) -> bool:
        return self in (MapCategory.PARABOLIC_AUTOMORPHISM, MapCategory.PARABOLIC_NON_AUTOMORPHISM)

    @property
    def has_interior_fixed_point(self) -> bool:
        return self.is_elliptic or self in (MapCategory.INTERIOR_EXTERIOR, MapCategory.INTERIOR_BOUNDARY)


@dataclass(frozen=True)
class ExtendedPoint:
    """
    A point of the extended complex plane.

    Attributes:
        value: The finite value, or None for the point at infinity
    """

    value: Optional[complex] = None

    def __post_init__(self) -> None:
        if self.value is not None:
            value = complex(self.value)
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise ValidationError(f"moebius_core: non-finite point {value}", field="point")
            object.__setattr__(self, "value", value)

    @classmethod
    def finite(cls, z: complex) -> ExtendedPoint:
        return cls(complex(z))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __complex__(self) -> complex:
        if self.value is None:
            raise ValidationError("moebius_core: the point at infinity has no complex value", field="point")
        return self.value

    def __abs__(self) -> float:
        return math.inf if self.value is None else abs(self.value)

    def to_json(self) -> Union[str, list[float]]:
        if self.value is None:
            return "inf"
        return [self.value.real, self.value.imag]


INFINITY = ExtendedPoint(None)

PointLike = Union[ExtendedPoint, complex, float, int]


def as_point(z: PointLike) -> ExtendedPoint:
    """Coerce a number or ExtendedPoint to an ExtendedPoint."""
    if isinstance(z, ExtendedPoint):
        return z
    return ExtendedPoint.finite(z)


def _normalize(matrix: np.ndarray) -> np.ndarray:
    """Scale a coefficient matrix so that its largest entry has modulus 1."""
    scale = np.abs(matrix).max()
    return matrix / scale


@dataclass(frozen=True, eq=False)
class MoebiusMap:
    """
    The linear fractional map z -> (az + b)/(cz + d).

    Attributes:
        a, b, c, d: Complex coefficients with ad - bc != 0
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        """Coerce coefficients and reject degenerate maps."""
        coefficients = [complex(x) for x in (self.a, self.b, self.c, self.d)]
        for name, value in zip("abcd", coefficients):
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise DegenerateMapError(f"moebius_core: coefficient {name} is not finite ({value})")
            object.__setattr__(self, name, value)

        a, b, c, d = coefficients
        if a * d - b * c == 0:
            raise DegenerateMapError(f"moebius_core: degenerate map, ad - bc = 0 for {coefficients}")

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def identity(cls) -> MoebiusMap:
        return cls(1, 0, 0, 1)

    @classmethod
    def from_matrix(cls, matrix: Any) -> MoebiusMap:
        m = np.asarray(matrix, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @property
    def coefficients(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def determinant(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def pole(self) -> ExtendedPoint:
        """The point sent to infinity (infinity itself for affine maps)."""
        if self.c == 0:
            return INFINITY
        return ExtendedPoint(-self.d / self.c)

    def normalized(self) -> MoebiusMap:
        """The same map with max-modulus coefficient 1."""
        return MoebiusMap.from_matrix(_normalize(self.matrix))

    def __call__(self, z: Any) -> Any:
        """Evaluate at finite points; accepts scalars and numpy arrays."""
        return (self.a * z + self.b) / (self.c * z + self.d)

    def projectively_equal(self, other: MoebiusMap, tol: float = 1e-9) -> bool:
        """True iff the coefficient quadruples are proportional within tol."""
        p = _normalize(self.matrix).ravel()
        q = _normalize(other.matrix).ravel()
        cross = np.outer(p, q) - np.outer(q, p)
        return bool(np.abs(cross).max() <= tol)

    def is_identity(self, tol: float = 1e-9) -> bool:
        return self.projectively_equal(MoebiusMap.identity(), tol)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        return self.projectively_equal(other)


@dataclass(frozen=True)
class FixedPointData:
    """
    Fixed points of a non-identity map.

    Attributes:
        points: One or two fixed points (attractive first, else interior first)
        multipliers: Derivative at each point (d/a at infinity for affine maps)
        locations: Location label per point
        double: True for a double fixed point (parabolic maps)
        attractive: Index of the point with |multiplier| < 1, if any
    """

    points: tuple[ExtendedPoint, ...]
    multipliers: tuple[complex, ...]
    locations: tuple[Location, ...]
    double: bool
    attractive: Optional[int]

    @property
    def multiplier(self) -> complex:
        """Derivative at the first-listed fixed point."""
        return self.multipliers[0]

    @property
    def attractive_point(self) -> Optional[ExtendedPoint]:
        return None if self.attractive is None else self.points[self.attractive]

    def to_dict(self) -> dict[str, Any]:
        return {
            "points": [
                {
                    "point": p.to_json(),
                    "location": str(loc),
                    "multiplier": [mu.real, mu.imag],
                }
                for p, loc, mu in zip(self.points, self.locations, self.multipliers)
            ],
            "double": self.double,
            "attractive": self.attractive,
        }


@dataclass(frozen=True)
class MapClassification:
    """
    Result of classify().

    Attributes:
        category: Symbol family
        fixed_point_data: Fixed points (None for the identity)
        is_automorphism: Whether the map is a disk automorphism
        derivative_at_attractive: Multiplier at the attractive point, the
            parabolic point, or the interior point of an elliptic map
        rotation_period: Period q of a rational rotation
    """

    category: MapCategory
    fixed_point_data: Optional[FixedPointData]
    is_automorphism: bool
    derivative_at_attractive: complex
    rotation_period: Optional[int] = None

    @property
    def multiplier(self) -> complex:
        return self.derivative_at_attractive

    @property
    def denjoy_wolff_point(self) -> Optional[ExtendedPoint]:
        """Limit of the iterates for non-elliptic maps."""
        data = self.fixed_point_data
        if data is None or self.category.is_elliptic:
            return None
        if data.double:
            return data.points[0]
        return data.attractive_point

    def to_dict(self) -> dict[str, Any]:
        mu = self.derivative_at_attractive
        return {
            "category": str(self.category),
            "is_automorphism": self.is_automorphism,
            "derivative_at_attractive": [mu.real, mu.imag],
            "rotation_period": self.rotation_period,
            "fixed_points": None if self.fixed_point_data is None else self.fixed_point_data.to_dict(),
        }


# =============================================================================
# Algebra
# =============================================================================

def evaluate(phi: MoebiusMap, z: PointLike) -> ExtendedPoint:
    """
    Evaluate phi on the extended plane.

    phi(inf) = a/c, phi(-d/c) = inf when c != 0, and phi(inf) = inf when c = 0.
    """
    p = as_point(z)
    if p.is_infinite:
        return INFINITY if phi.c == 0 else ExtendedPoint(phi.a / phi.c)

    w = p.value
    denominator = phi.c * w + phi.d
    if denominator == 0:
        return INFINITY
    return ExtendedPoint((phi.a * w + phi.b) / denominator)


def compose(f: MoebiusMap, g: MoebiusMap) -> MoebiusMap:
    """The map f o g (product of coefficient matrices)."""
    return MoebiusMap.from_matrix(_normalize(f.matrix @ g.matrix))


def inverse(phi: MoebiusMap) -> MoebiusMap:
    """Inverse map from the adjugate matrix."""
    return MoebiusMap(phi.d, -phi.b, -phi.c, phi.a)


def _matrix_power(matrix: np.ndarray, n: int) -> np.ndarray:
    result = np.eye(2, dtype=complex)
    base = _normalize(matrix)
    while n > 0:
        if n & 1:
            result = _normalize(result @ base)
        n >>= 1
        if n:
            base = _normalize(base @ base)
    return result


def iterate(phi: MoebiusMap, n: int, tolerances: Optional[Tolerances] = None) -> MoebiusMap:
    """
    n-fold composition of phi by binary powering of the coefficient matrix.

    Results projectively equal to the identity within the identity_snap
    tolerance are returned as the exact identity.
    """
    if n < 0:
        raise ValidationError(f"moebius_core: iterate needs n >= 0, got {n}", field="n")
    tol = tolerances or get_default_tolerances()

    if n == 0:
        return MoebiusMap.identity()

    result = MoebiusMap.from_matrix(_matrix_power(phi.matrix, n))
    if result.is_identity(tol.identity_snap):
        return MoebiusMap.identity()
    return result


def derivative_at(phi: MoebiusMap, z: PointLike) -> complex:
    """phi'(z) = (ad - bc)/(cz + d)^2 at a finite point other than the pole."""
    p = as_point(z)
    if p.is_infinite:
        raise ValidationError("moebius_core: derivative at infinity is undefined", field="z")

    denominator = phi.c * p.value + phi.d
    if denominator == 0:
        raise ValidationError(f"moebius_core: derivative requested at the pole {p.value}", field="z")
    return phi.determinant / denominator**2


# =============================================================================
# Fixed points and geometry
# =============================================================================

def locate(point: ExtendedPoint, tolerances: Optional[Tolerances] = None) -> Location:
    """Location label of a point relative to the unit circle."""
    tol = tolerances or get_default_tolerances()
    if point.is_infinite:
        return Location.INFINITY
    r = abs(point.value)
    if r < 1 - tol.eps_loc:
        return Location.INTERIOR
    if r > 1 + tol.eps_loc:
        return Location.EXTERIOR
    return Location.BOUNDARY


def _discriminant_ratio(phi: MoebiusMap) -> complex:
    """(tr^2 - 4 det)/det, invariant under scaling and conjugation."""
    trace = phi.a + phi.d
    return trace * trace / phi.determinant - 4


def _quadratic_roots(phi: MoebiusMap) -> tuple[complex, complex]:
    """Roots of cz^2 + (d - a)z - b = 0 for c != 0 (cancellation-free form)."""
    a, b, c, d = phi.coefficients
    linear = d - a
    root = cmath.sqrt(linear * linear + 4 * b * c)
    q_plus = -(linear + root) / 2
    q_minus = -(linear - root) / 2
    q = q_plus if abs(q_plus) >= abs(q_minus) else q_minus
    if q == 0:
        double = (a - d) / (2 * c)
        return double, double
    return q / c, -b / q


def fixed_points(phi: MoebiusMap, tolerances: Optional[Tolerances] = None) -> FixedPointData:
    """
    Fixed points of a non-identity map on the extended plane.

    Raises:
        IdentityMapError: for the identity, which fixes every point
    """
    tol = tolerances or get_default_tolerances()
    if phi.is_identity(tol.eps_class):
        raise IdentityMapError("moebius_core: the identity map fixes every point")

    m = phi.normalized()
    a, b, c, d = m.coefficients
    affine = abs(c) <= AFFINE_CUTOFF

    if abs(_discriminant_ratio(m)) <= tol.eps_class:
        if affine:
            point, multiplier = INFINITY, d / a
        else:
            point = ExtendedPoint((a - d) / (2 * c))
            multiplier = derivative_at(m, point)
        return FixedPointData(
            points=(point,),
            multipliers=(multiplier,),
            locations=(locate(point, tol),),
            double=True,
            attractive=None,
        )

    if affine:
        points = [ExtendedPoint(b / (d - a)), INFINITY]
        multipliers = [a / d, d / a]
    else:
        roots = _quadratic_roots(m)
        points = [ExtendedPoint(r) for r in roots]
        multipliers = [derivative_at(m, p) for p in points]

    locations = [locate(p, tol) for p in points]

    order = [0, 1]
    if all(abs(abs(mu) - 1) <= tol.eps_class for mu in multipliers):
        if locations[1] == Location.INTERIOR:
            order = [1, 0]
    elif abs(multipliers[1]) < abs(multipliers[0]):
        order = [1, 0]

    points = [points[i] for i in order]
    multipliers = [multipliers[i] for i in order]
    locations = [locations[i] for i in order]
    attractive = 0 if abs(multipliers[0]) < 1 - tol.eps_class else None

    logger.debug(f"Fixed points {points} with multipliers {multipliers}")
    return FixedPointData(
        points=tuple(points),
        multipliers=tuple(multipliers),
        locations=tuple(locations),
        double=False,
        attractive=attractive,
    )


def image_circle(phi: MoebiusMap, tolerances: Optional[Tolerances] = None) -> tuple[complex, float]:
    """
    The circle phi(T) as (center, radius), via the circumcircle of phi(1), phi(i), phi(-1).

    Raises:
        NotSelfMapError: if the image is a line (pole on the unit circle)
    """
    tol = tolerances or get_default_tolerances()
    images = [evaluate(phi, z) for z in CIRCLE_SAMPLES]
    if any(w.is_infinite for w in images):
        raise NotSelfMapError("moebius_core: the pole lies on the unit circle, phi(T) is a line")

    z1, z2, z3 = (w.value for w in images)
    w2, w3 = z2 - z1, z3 - z1
    area = (w2.conjugate() * w3).imag
    if abs(area) <= tol.eps_loc * abs(w2) * abs(w3):
        raise NotSelfMapError("moebius_core: the images of 1, i, -1 are collinear, phi(T) is a line")

    center = z1 + (abs(w2) ** 2 * w3 - abs(w3) ** 2 * w2) / (w3 * w2.conjugate() - w2 * w3.conjugate())
    return center, abs(center - z1)


def is_self_map(phi: MoebiusMap, tolerances: Optional[Tolerances] = None) -> bool:
    """
    True iff phi maps the open unit disk into itself.

    The image circle must lie in the closed disk (tangency allowed) and phi(0)
    must lie inside that circle, which selects its inside as the image of D.
    """
    tol = tolerances or get_default_tolerances()
    center, radius = image_circle(phi, tol)
    if abs(center) + radius > 1 + tol.eps_loc:
        return False

    origin = evaluate(phi, 0)
    if origin.is_infinite or abs(origin.value) >= 1 + tol.eps_loc:
        return False
    return abs(origin.value - center) < radius


def is_automorphism(phi: MoebiusMap, tolerances: Optional[Tolerances] = None) -> bool:
    """True iff phi(1), phi(i), phi(-1) all lie on the unit circle."""
    tol = tolerances or get_default_tolerances()
    for z in CIRCLE_SAMPLES:
        w = evaluate(phi, z)
        if w.is_infinite or abs(abs(w.value) - 1) > tol.eps_loc:
            return False
    return True


def rotation_period(mu: complex, tolerances: Optional[Tolerances] = None) -> Optional[int]:
    """
    Period q of the rotation by mu, or None when the angle is irrational.

    The best approximation p/q of arg(mu)/2pi with q <= q_max counts as exact
    when it is closer than eps_rot/q.
    """
    tol = tolerances or get_default_tolerances()
    x = (cmath.phase(mu) / (2 * math.pi)) % 1.0
    best = Fraction(x).limit_denominator(tol.q_max)
    error = float(abs(Fraction(x) - best))
    if error < tol.eps_rot / best.denominator:
        return best.denominator
    return None


# =============================================================================
# Classification
# =============================================================================

def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConsistencyError(f"moebius_core: {message}")


def classify(phi: MoebiusMap, tolerances: Optional[Tolerances] = None) -> MapClassification:
    """
    Classify a disk self-map into one of the recurrence-table families.

    Raises:
        NotSelfMapError: if phi does not map the disk into itself
        ConsistencyError: if the computed fixed-point locations contradict the
            location rules for self-maps (signals a tolerance failure)
    """
    tol = tolerances or get_default_tolerances()
    if not is_self_map(phi, tol):
        raise NotSelfMapError(f"moebius_core: {phi} is not a self-map of the unit disk")

    if phi.is_identity(tol.eps_class):
        return MapClassification(MapCategory.IDENTITY, None, True, 1 + 0j)

    data = fixed_points(phi, tol)
    automorphism = is_automorphism(phi, tol)
    mu = data.multiplier

    if data.double:
        _require(data.locations[0] == Location.BOUNDARY,
                 f"parabolic fixed point {data.points[0]} is not on the unit circle")
        _require(abs(mu - 1) <= math.sqrt(tol.eps_class),
                 f"parabolic multiplier {mu} differs from 1")
        category = (MapCategory.PARABOLIC_AUTOMORPHISM if automorphism
                    else MapCategory.PARABOLIC_NON_AUTOMORPHISM)
        return MapClassification(category, data, automorphism, mu)

    first, second = data.locations

    if abs(abs(mu) - 1) <= tol.eps_class:
        _require(first == Location.INTERIOR and second.is_outside,
                 f"elliptic map with fixed points at {data.locations}")
        _require(automorphism, "elliptic map is not an automorphism")
        period = rotation_period(mu, tol)
        category = MapCategory.ELLIPTIC_IRRATIONAL if period is None else MapCategory.ELLIPTIC_RATIONAL
        return MapClassification(category, data, automorphism, mu, period)

    if abs(mu.imag) <= tol.eps_class * max(1.0, abs(mu)) and mu.real > 0:
        if first == Location.BOUNDARY:
            if second == Location.BOUNDARY:
                _require(automorphism, "hyperbolic map with two boundary fixed points is not an automorphism")
                category = MapCategory.HYPERBOLIC_AUTOMORPHISM
            else:
                _require(second.is_outside, f"hyperbolic repelling point is {second}")
                _require(not automorphism, "hyperbolic automorphism with an exterior fixed point")
                category = MapCategory.HYPERBOLIC_NON_AUTOMORPHISM
        else:
            _require(first == Location.INTERIOR, f"attractive fixed point is {first}")
            category = (MapCategory.INTERIOR_BOUNDARY if second == Location.BOUNDARY
                        else MapCategory.INTERIOR_EXTERIOR)
        return MapClassification(category, data, automorphism, mu)

    _require(first == Location.INTERIOR and second.is_outside,
             f"loxodromic map with fixed points at {data.locations}")
    return MapClassification(MapCategory.INTERIOR_EXTERIOR, data, automorphism, mu)


def denjoy_wolff(phi: MoebiusMap, tol: float = 1e-9, max_iter: int = 1000,
                 tolerances: Optional[Tolerances] = None) -> ExtendedPoint:
    """
    Limit of the iterates phi_n(0) for non-elliptic self-maps.

    A double fixed point p is returned in closed form: w = 1/(z - p) turns phi
    into a translation w -> w + a, so phi_n(0) = p + 1/(na - 1/p) tends to p
    only like 1/n. Otherwise the orbit is advanced by squaring the coefficient
    matrix, step k comparing phi_{2^k}(0) with phi_{2^(k-1)}(0).

    Raises:
        ConvergenceError: for the identity and elliptic maps, or when the orbit
            does not settle within max_iter doublings
        ConsistencyError: when the limit disagrees with the attractive fixed point
    """
    settings = tolerances or get_default_tolerances()
    if phi.is_identity(settings.eps_class):
        raise ConvergenceError("moebius_core: the identity has no Denjoy-Wolff point", 0)

    data = fixed_points(phi, settings)
    if data.double:
        return _parabolic_limit(phi, data.points[0], settings)

    target = data.attractive_point
    if target is None:
        raise ConvergenceError("moebius_core: no attractive fixed point (elliptic symbol)", 0)

    matrix = _normalize(phi.matrix)
    previous: Optional[complex] = complex(matrix[0, 1] / matrix[1, 1]) if matrix[1, 1] != 0 else None
    limit: Optional[complex] = None
    doublings = 0

    for doublings in range(1, max_iter + 1):
        matrix = _normalize(matrix @ matrix)
        if matrix[1, 1] == 0:
            previous = None
            continue
        current = complex(matrix[0, 1] / matrix[1, 1])
        if previous is not None and abs(current - previous) < tol:
            limit = current
            break
        previous = current

    if limit is None:
        raise ConvergenceError(
            f"moebius_core: Denjoy-Wolff iteration did not converge in {max_iter} doublings", max_iter)
    if target.is_infinite or abs(limit - target.value) > 10 * tol:
        raise ConsistencyError(f"moebius_core: Denjoy-Wolff limit {limit} disagrees with "
                               f"the attractive fixed point {target}")

    logger.debug(f"Denjoy-Wolff point {limit} after {doublings} doublings")
    return ExtendedPoint(limit)


def _parabolic_limit(phi: MoebiusMap, point: ExtendedPoint, tol: Tolerances) -> ExtendedPoint:
    """The double fixed point, once phi is confirmed conjugate to a nonzero translation."""
    if point.is_infinite:
        raise ConsistencyError("moebius_core: parabolic fixed point at infinity for a disk self-map")

    p = complex(point)
    to_infinity = MoebiusMap(0, 1, 1, -p)
    shifted = compose(compose(to_infinity, phi), inverse(to_infinity))
    scale = math.sqrt(tol.eps_class) * abs(shifted.d)
    _require(abs(shifted.c) <= scale and abs(shifted.a - shifted.d) <= scale,
             f"conjugate {shifted} of a parabolic map is not a translation")

    shift = shifted.b / shifted.d
    _require(abs(shift) > tol.eps_class, "parabolic map with zero translation")
    logger.debug(f"Denjoy-Wolff point {p} (translation by {shift})")
    return point


# =============================================================================
# Normal forms and conjugation
# =============================================================================

def rotation(theta: float) -> MoebiusMap:
    """z -> e^{i theta} z."""
    return MoebiusMap(cmath.exp(1j * theta), 0, 0, 1)


def disk_automorphism(theta: float, p: complex) -> MoebiusMap:
    """z -> e^{i theta} (z - p)/(1 - conj(p) z), with |p| < 1."""
    p = complex(p)
    if not abs(p) < 1:
        raise ValidationError(f"moebius_core: automorphism center must satisfy |p| < 1, got {p}", field="p")
    u = cmath.exp(1j * theta)
    return MoebiusMap(u, -u * p, -p.conjugate(), 1)


def conjugate(phi: MoebiusMap, t: MoebiusMap) -> MoebiusMap:
    """T^{-1} o phi o T."""
    return compose(inverse(t), compose(phi, t))


def cayley() -> MoebiusMap:
    """sigma(z) = (1 + z)/(1 - z), the disk onto the right half-plane with 1 -> inf."""
    return MoebiusMap(1, 1, -1, 1)


def parabolic_normal_form(a: complex) -> MoebiusMap:
    """((2 - a)z + a)/(-az + 2 + a): conjugate to w -> w + a under the Cayley map."""
    a = complex(a)
    if a == 0:
        raise ValidationError("moebius_core: the translation parameter must be nonzero", field="a")
    return MoebiusMap(2 - a, a, -a, 2 + a)


def hyperbolic_automorphism_normal_form(mu: float) -> MoebiusMap:
    """((1 + mu)z + 1 - mu)/((1 - mu)z + 1 + mu): fixed points 1 (attractive, phi' = mu) and -1."""
    if not 0 < mu < 1:
        raise ValidationError(f"moebius_core: hyperbolic multiplier must be in (0, 1), got {mu}", field="mu")
    return MoebiusMap(1 + mu, 1 - mu, 1 - mu, 1 + mu)


def hyperbolic_non_automorphism_normal_form(mu: float) -> MoebiusMap:
    """mu z + 1 - mu: boundary fixed point 1 with phi'(1) = mu, phi(0) = 1 - mu."""
    if not 0 < mu < 1:
        raise ValidationError(f"moebius_core: hyperbolic multiplier must be in (0, 1), got {mu}", field="mu")
    return MoebiusMap(mu, 1 - mu, 0, 1)


def parabolic_translation_parameter(phi: MoebiusMap, tolerances: Optional[Tolerances] = None) -> complex:
    """
    The a with sigma o phi o sigma^{-1}(w) = w + a once the fixed point is rotated to 1.

    Re a = 0 exactly for automorphisms.

    Raises:
        UnsupportedCategoryError: for non-parabolic maps
    """
    tol = tolerances or get_default_tolerances()
    classification = classify(phi, tol)
    if not classification.category.is_parabolic:
        raise UnsupportedCategoryError(
            f"moebius_core: translation parameter needs a parabolic map, got {classification.category}",
            str(classification.category),
        )

    eta = complex(classification.fixed_point_data.points[0])
    to_eta = rotation(cmath.phase(eta))
    at_one = conjugate(phi, to_eta)

    sigma = cayley()
    translation = compose(compose(sigma, at_one), inverse(sigma))
    _require(abs(translation.c) <= math.sqrt(tol.eps_class) * abs(translation.d),
             f"Cayley conjugate {translation} is not a translation")

    a = translation.b / translation.d
    _require((abs(a.real) <= math.sqrt(tol.eps_class) * max(1.0, abs(a))) == classification.is_automorphism,
             f"translation parameter {a} contradicts automorphism={classification.is_automorphism}")
    return a
