"""
Weighted Dirichlet spaces S_nu on truncated Taylor coefficient vectors.

A function f = sum a_n z^n belongs to S_nu when

    ||f||_nu^2 = sum |a_n|^2 (n + 1)^(2 nu) < inf.

nu = 0 is the Hardy space, nu = -1/2 the Bergman space and nu = 1/2 the
Dirichlet space. Every series handled here is a polynomial, so all norms are
finite sums; kernels are truncated and their tail is bounded explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Optional, Sequence, Union

import numpy as np

from lfm_recurrence.core.config import DEFAULT_DEGREE
from lfm_recurrence.utils.error_handler import ValidationError, WeightMismatchError
from lfm_recurrence.utils.logger import get_logger

logger = get_logger(__name__)

# Weights overflow beyond this (|nu| <= 20 and N <= 10^4 stay well inside).
MAX_DEGREE = 10**4

Number = Union[complex, float, int]


def weights(nu: float, size: int) -> np.ndarray:
    """(n + 1)^(2 nu) for n = 0..size-1, computed as exp(2 nu log(n + 1))."""
    n = np.arange(size, dtype=float)
    return np.exp(2.0 * nu * np.log1p(n))


@dataclass(frozen=True, eq=False)
class WeightedSeries:
    """
    A polynomial a_0 + a_1 z + ... + a_N z^N viewed as an element of S_nu.

    Attributes:
        nu: Weight parameter
        coeffs: Complex coefficient vector of length N + 1
    """

    nu: float
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValidationError("weighted_space: coefficients must be a non-empty vector", field="coeffs")
        if not np.all(np.isfinite(coeffs)):
            raise ValidationError("weighted_space: coefficients must be finite", field="coeffs")
        if not math.isfinite(self.nu):
            raise ValidationError(f"weighted_space: nu must be finite, got {self.nu}", field="nu")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "nu", float(self.nu))

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[Number], nu: float = 0.0) -> WeightedSeries:
        return cls(nu, np.asarray(list(coeffs), dtype=complex))

    @classmethod
    def monomial(cls, n: int, nu: float = 0.0, scale: Number = 1.0) -> WeightedSeries:
        coeffs = np.zeros(n + 1, dtype=complex)
        coeffs[n] = scale
        return cls(nu, coeffs)

    @classmethod
    def constant(cls, value: Number, nu: float = 0.0) -> WeightedSeries:
        return cls(nu, np.array([value], dtype=complex))

    @property
    def degree(self) -> int:
        """Truncation degree N (length minus one, trailing zeros included)."""
        return self.coeffs.size - 1

    @property
    def constant_term(self) -> complex:
        return complex(self.coeffs[0])

    def padded(self, size: int) -> np.ndarray:
        """Coefficients zero-padded (or truncated) to the given length."""
        out = np.zeros(size, dtype=complex)
        n = min(size, self.coeffs.size)
        out[:n] = self.coeffs[:n]
        return out

    def truncated(self, degree: int) -> WeightedSeries:
        return WeightedSeries(self.nu, self.padded(degree + 1))

    def with_nu(self, nu: float) -> WeightedSeries:
        """The same coefficients viewed in another space."""
        return WeightedSeries(nu, self.coeffs)

    def derivative(self) -> WeightedSeries:
        """Term-wise derivative (same nu)."""
        if self.coeffs.size == 1:
            return WeightedSeries(self.nu, np.zeros(1, dtype=complex))
        n = np.arange(1, self.coeffs.size)
        return WeightedSeries(self.nu, self.coeffs[1:] * n)

    def without_constant(self) -> WeightedSeries:
        """The representative of f modulo constants with a_0 = 0."""
        coeffs = self.coeffs.copy()
        coeffs[0] = 0
        return WeightedSeries(self.nu, coeffs)

    def _check_same_space(self, other: WeightedSeries) -> None:
        if self.nu != other.nu:
            raise WeightMismatchError(f"weighted_space: series live in S_{self.nu} and S_{other.nu}")

    def _aligned(self, other: WeightedSeries) -> tuple[np.ndarray, np.ndarray]:
        size = max(self.coeffs.size, other.coeffs.size)
        return self.padded(size), other.padded(size)

    def __add__(self, other: WeightedSeries) -> WeightedSeries:
        if not isinstance(other, WeightedSeries):
            return NotImplemented
        self._check_same_space(other)
        p, q = self._aligned(other)
        return WeightedSeries(self.nu, p + q)

    def __sub__(self, other: WeightedSeries) -> WeightedSeries:
        if not isinstance(other, WeightedSeries):
            return NotImplemented
        self._check_same_space(other)
        p, q = self._aligned(other)
        return WeightedSeries(self.nu, p - q)

    def __neg__(self) -> WeightedSeries:
        return WeightedSeries(self.nu, -self.coeffs)

    def __mul__(self, scalar: Number) -> WeightedSeries:
        if not isinstance(scalar, (complex, float, int, np.number)):
            return NotImplemented
        return WeightedSeries(self.nu, self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        """Exact equality after zero-padding (nu must agree)."""
        if not isinstance(other, WeightedSeries):
            return NotImplemented
        if self.nu != other.nu:
            return False
        p, q = self._aligned(other)
        return bool(np.array_equal(p, q))

    def allclose(self, other: WeightedSeries, atol: float = 1e-12) -> bool:
        p, q = self._aligned(other)
        return self.nu == other.nu and bool(np.allclose(p, q, rtol=0.0, atol=atol))

    def to_json(self) -> list[list[float]]:
        return [[float(a.real), float(a.imag)] for a in self.coeffs]


@dataclass(frozen=True)
class KernelSpec:
    """
    Reproducing kernel K_w of S_nu, truncated at the given degree.

    Attributes:
        w: Kernel point, |w| < 1
        nu: Weight parameter
        degree: Truncation degree
    """

    w: complex
    nu: float = 0.0
    degree: int = DEFAULT_DEGREE

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", complex(self.w))
        if not abs(self.w) < 1:
            raise ValidationError(f"weighted_space: kernel point must satisfy |w| < 1, got {self.w}",
                                  field="w")
        if not 0 <= self.degree <= MAX_DEGREE:
            raise ValidationError(f"weighted_space: kernel degree must be in [0, {MAX_DEGREE}]",
                                  field="degree")


# =============================================================================
# Norms and inner products
# =============================================================================

def norm_nu(f: WeightedSeries) -> float:
    """sqrt(sum |a_n|^2 (n + 1)^(2 nu))."""
    w = weights(f.nu, f.coeffs.size)
    return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2 * w)))


def inner_product(f: WeightedSeries, g: WeightedSeries) -> complex:
    """
    sum a_n conj(b_n) (n + 1)^(2 nu) over the common padded range.

    Raises:
        WeightMismatchError: if f and g have different nu
    """
    if f.nu != g.nu:
        raise WeightMismatchError(f"weighted_space: inner product of S_{f.nu} and S_{g.nu} series")
    size = max(f.coeffs.size, g.coeffs.size)
    a, b = f.padded(size), g.padded(size)
    return complex(np.sum(a * np.conj(b) * weights(f.nu, size)))


def eval_series(f: WeightedSeries, z: Number) -> complex:
    """Horner evaluation of f at z (warns outside the disk)."""
    z = complex(z)
    if abs(z) >= 1:
        logger.warning(f"Evaluating series outside the unit disk at z={z}")
    return complex(np.polynomial.polynomial.polyval(z, f.coeffs))


def dirichlet_seminorm_sq(f: WeightedSeries) -> float:
    """sum_{n >= 1} n |a_n|^2, the area integral of |f'|^2 under normalized measure."""
    n = np.arange(f.coeffs.size, dtype=float)
    return float(np.sum(n * np.abs(f.coeffs) ** 2))


def dirichlet_norm_sq(f: WeightedSeries) -> float:
    """|f(0)|^2 + integral of |f'|^2 dA."""
    return abs(f.constant_term) ** 2 + dirichlet_seminorm_sq(f)


def hardy_norm_quadrature(f: WeightedSeries, samples: int, radius: float = 1.0) -> float:
    """
    Integral mean (1/2pi) int |f(r e^{it})|^2 dt by the trapezoid rule.

    The rule is exact for trigonometric polynomials once samples exceed
    twice the degree; samples >= 4(N + 1) is required.

    Raises:
        ValidationError: for too few samples or a radius outside (0, 1]
    """
    minimum = 4 * (f.degree + 1)
    if samples < minimum:
        raise ValidationError(f"weighted_space: need at least {minimum} samples, got {samples}",
                              field="samples")
    if not 0 < radius <= 1:
        raise ValidationError(f"weighted_space: radius must be in (0, 1], got {radius}", field="radius")

    scaled = f.coeffs * radius ** np.arange(f.coeffs.size)
    padded = np.zeros(samples, dtype=complex)
    padded[: scaled.size] = scaled
    # Values f(r e^{2 pi i k / samples}) for k = 0..samples-1.
    values = np.fft.ifft(padded) * samples
    return float(np.mean(np.abs(values) ** 2))


def growth_ratio(f: WeightedSeries, nu: float, z: Number) -> float:
    """
    |f'(z)| (1 - |z|^2)^((3 - 2 nu)/2), bounded on the disk for f in S_nu, nu < 1/2.

    Raises:
        ValidationError: for nu >= 1/2 or |z| >= 1
    """
    if not nu < 0.5:
        raise ValidationError(f"weighted_space: growth estimate needs nu < 1/2, got {nu}", field="nu")
    z = complex(z)
    if not abs(z) < 1:
        raise ValidationError(f"weighted_space: growth ratio needs |z| < 1, got {z}", field="z")

    derivative = complex(np.polynomial.polynomial.polyval(z, f.derivative().coeffs))
    return abs(derivative) * (1 - abs(z) ** 2) ** ((3 - 2 * nu) / 2)


def growth_profile(f: WeightedSeries, nu: float, radii: Sequence[float],
                   angles: Optional[Sequence[float]] = None) -> np.ndarray:
    """growth_ratio on the polar grid radii x angles (shape len(radii) x len(angles))."""
    if angles is None:
        angles = np.linspace(0.0, 2 * np.pi, 64, endpoint=False)
    grid = np.empty((len(radii), len(angles)))
    for i, r in enumerate(radii):
        for j, t in enumerate(angles):
            grid[i, j] = growth_ratio(f, nu, r * np.exp(1j * t))
    return grid


# =============================================================================
# Reproducing kernels
# =============================================================================

def reproducing_kernel(spec: KernelSpec) -> WeightedSeries:
    """K_w with coefficients conj(w)^n/(n + 1)^(2 nu) for n <= degree."""
    n = np.arange(spec.degree + 1)
    coeffs = np.conj(spec.w) ** n / weights(spec.nu, spec.degree + 1)
    return WeightedSeries(spec.nu, coeffs)


def kernel_function(x: Number, nu: float, degree: int = DEFAULT_DEGREE) -> complex:
    """Truncated generating function k(x) = sum_{n <= degree} x^n/(n + 1)^(2 nu)."""
    x = complex(x)
    n = np.arange(degree + 1)
    return complex(np.sum(x**n / weights(nu, degree + 1)))


def kernel_tail_bound(x: float, nu: float, degree: int) -> float:
    """
    Bound on sum_{n > degree} |x|^n/(n + 1)^(2 nu) by a geometric series.

    The term ratio |x| ((n + 1)/(n + 2))^(2 nu) is at most
    |x| max(1, ((degree + 2)/(degree + 3))^(2 nu)) beyond the cut; math.inf when
    that ratio reaches 1 (negative nu with |x| close to 1).
    """
    x = abs(x)
    if not x < 1:
        raise ValidationError(f"weighted_space: tail bound needs |x| < 1, got {x}", field="x")
    first = x ** (degree + 1) / math.exp(2 * nu * math.log(degree + 2))
    ratio = x * max(1.0, ((degree + 2) / (degree + 3)) ** (2 * nu))
    if ratio >= 1:
        return math.inf
    return first / (1 - ratio)


def kernel_norm_sq(spec: KernelSpec) -> float:
    """||K_w||^2 = k(|w|^2), truncated at the kernel degree."""
    return kernel_function(abs(spec.w) ** 2, spec.nu, spec.degree).real


# =============================================================================
# Orthonormal coordinates
# =============================================================================

def to_orthonormal_coordinates(f: WeightedSeries) -> np.ndarray:
    """x_n = a_n (n + 1)^nu, coordinates in the basis z^n/(n + 1)^nu."""
    return f.coeffs * weights(f.nu / 2, f.coeffs.size)


def from_orthonormal_coordinates(x: Any, nu: float) -> WeightedSeries:
    x = np.asarray(x, dtype=complex)
    return WeightedSeries(nu, x / weights(nu / 2, x.size))
