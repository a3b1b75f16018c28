"""
The weighted composition operator lambda C_phi in coordinates.

f o phi is computed on truncated Taylor coefficients: phi is expanded about 0 as
a geometric series and f is composed by Horner's scheme over truncated
polynomial products. Matrix sections use the orthonormal basis
e_j = z^j/(j + 1)^nu of S_nu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from lfm_recurrence.core.config import MAX_SECTION_SIZE, Tolerances
from lfm_recurrence.core.moebius_core import MoebiusMap, derivative_at, evaluate, iterate
from lfm_recurrence.core.weighted_space import (
    WeightedSeries,
    dirichlet_seminorm_sq,
    eval_series,
    inner_product,
    norm_nu,
    weights,
)
from lfm_recurrence.utils.error_handler import ValidationError
from lfm_recurrence.utils.logger import ProcessingLogger, get_logger

logger = get_logger(__name__)

# Orbits stop once |lambda|^k passes this.
OVERFLOW_LIMIT = 1e300
EIGEN_RESIDUAL_TOL = 1e-8
# Power iteration only has to land near an eigenvector before Rayleigh quotient iteration.
EIGEN_SEED_TOL = 1e-3
EIGEN_FLOOR = 1e-14
EIGEN_DUPLICATE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class TruncatedMap:
    """
    Taylor coefficients of a map about 0.

    Attributes:
        taylor: Coefficients t_0..t_N of phi
        source: The expanded map
    """

    taylor: np.ndarray
    source: MoebiusMap

    @property
    def degree(self) -> int:
        return self.taylor.size - 1


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """
    Finite section of lambda C_phi in the orthonormal basis of S_nu.

    Attributes:
        entries: n x n complex matrix; column j holds lambda (e_j o phi)
        nu: Weight parameter
        lam: Scalar lambda
        symbol: The map phi
    """

    entries: np.ndarray
    nu: float
    lam: complex
    symbol: MoebiusMap

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def apply(self, coordinates: Any) -> np.ndarray:
        """Multiply orthonormal coordinates (padded or truncated to n)."""
        x = np.zeros(self.n, dtype=complex)
        values = np.asarray(coordinates, dtype=complex)[: self.n]
        x[: values.size] = values
        return self.entries @ x

    def is_upper_triangular(self) -> bool:
        return np.count_nonzero(np.tril(self.entries, -1)) == 0

    def is_lower_triangular(self) -> bool:
        return np.count_nonzero(np.triu(self.entries, 1)) == 0

    def to_json(self) -> list[list[list[float]]]:
        return [[[float(x.real), float(x.imag)] for x in row] for row in self.entries]


@dataclass(frozen=True)
class OrbitRecord:
    """
    One step of an orbit experiment.

    Attributes:
        k: Iteration index
        distance: ||lambda^k f o phi_k - f||_nu
        running_min: Minimum distance over steps 1..k
    """

    k: int
    distance: float
    running_min: float


@dataclass
class OrbitRun:
    """Orbit records plus the overflow flag set when |lambda|^k got too large."""

    records: list[OrbitRecord] = field(default_factory=list)
    overflow: bool = False

    @property
    def minimum(self) -> float:
        return self.records[-1].running_min if self.records else math.inf


@dataclass(frozen=True)
class EigenEstimate:
    """
    An eigenvalue of a finite section with its residual.

    Attributes:
        value: Eigenvalue estimate
        residual: ||Mv - value v||/||v|| for the returned vector
        converged: residual <= 1e-8
    """

    value: complex
    residual: float
    converged: bool


# =============================================================================
# Series composition
# =============================================================================

def taylor_of_map(phi: MoebiusMap, degree: int) -> TruncatedMap:
    """
    Expand (az + b)/(cz + d) about 0 up to the given degree.

    t_0 = b/d and t_n = (ad - bc)/d^2 (-c/d)^(n-1) for n >= 1, exact for c = 0.

    Raises:
        ValidationError: if the pole -d/c lies on or inside the closed disk
    """
    if degree < 0:
        raise ValidationError(f"composition: degree must be >= 0, got {degree}", field="degree")
    a, b, c, d = phi.coefficients
    if c != 0 and not abs(d) > abs(c):
        raise ValidationError(f"composition: pole {-d / c} of {phi} lies in the closed unit disk",
                              field="map")

    taylor = np.zeros(degree + 1, dtype=complex)
    taylor[0] = b / d
    if degree >= 1:
        ratio = -c / d
        powers = np.ones(degree, dtype=complex)
        if degree > 1:
            powers[1:] = np.cumprod(np.full(degree - 1, ratio))
        taylor[1:] = (a * d - b * c) / (d * d) * powers
    return TruncatedMap(taylor, phi)


def _truncated_product(p: np.ndarray, q: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros(size, dtype=complex)
    product = np.convolve(p[:size], q[:size])[:size]
    out[: product.size] = product
    return out


def compose_series(f: WeightedSeries, phi: MoebiusMap, degree: Optional[int] = None) -> WeightedSeries:
    """
    Coefficients of f o phi truncated at degree (default: the degree of f).

    Uses Horner's scheme a_0 + phi (a_1 + phi (a_2 + ...)) on truncated
    products, starting from the highest nonzero coefficient. Maps z -> (a/d) z
    scale the coefficients directly.
    """
    n = f.degree if degree is None else degree
    size = n + 1
    coeffs = f.padded(size)

    if phi.b == 0 and phi.c == 0:
        return WeightedSeries(f.nu, coeffs * (phi.a / phi.d) ** np.arange(size))

    nonzero = np.flatnonzero(f.coeffs)
    if nonzero.size == 0:
        return WeightedSeries(f.nu, np.zeros(size, dtype=complex))

    top = int(nonzero[-1])
    taylor = taylor_of_map(phi, n).taylor
    result = np.zeros(size, dtype=complex)
    result[0] = f.coeffs[top]
    for k in range(top - 1, -1, -1):
        result = _truncated_product(result, taylor, size)
        result[0] += f.coeffs[k]
    return WeightedSeries(f.nu, result)


def apply_lambda_op(f: WeightedSeries, phi: MoebiusMap, lam: complex,
                    degree: Optional[int] = None) -> WeightedSeries:
    """lambda (f o phi)."""
    return compose_series(f, phi, degree) * complex(lam)


# =============================================================================
# Matrix sections
# =============================================================================

def operator_matrix(phi: MoebiusMap, nu: float, lam: complex, n: int) -> OperatorMatrix:
    """
    n x n section of lambda C_phi in the basis z^j/(j + 1)^nu.

    Entry (i, j) = lambda [z^i] phi^j (i + 1)^nu/(j + 1)^nu.
    """
    if not 1 <= n <= MAX_SECTION_SIZE:
        raise ValidationError(f"composition: section size must be in [1, {MAX_SECTION_SIZE}], got {n}",
                              field="n")
    taylor = taylor_of_map(phi, n - 1).taylor
    powers = np.zeros((n, n), dtype=complex)
    column = np.zeros(n, dtype=complex)
    column[0] = 1
    for j in range(n):
        powers[:, j] = column
        column = _truncated_product(column, taylor, n)

    scale = weights(nu / 2, n)
    entries = complex(lam) * powers * np.outer(scale, 1 / scale)
    return OperatorMatrix(entries, float(nu), complex(lam), phi)


def _householder_deflate(matrix: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """Trailing block of H A H where H maps the eigenvector onto e_1."""
    v = vector / np.linalg.norm(vector)
    phase = v[0] / abs(v[0]) if v[0] != 0 else 1.0
    u = v.copy()
    u[0] += phase
    norm_u = np.linalg.norm(u)
    if norm_u == 0:
        return matrix[1:, 1:]
    u /= norm_u
    reflector = np.eye(matrix.shape[0], dtype=complex) - 2 * np.outer(u, u.conj())
    return (reflector @ matrix @ reflector)[1:, 1:]


def _power_iteration(matrix: np.ndarray, max_iter: int, tol: float) -> tuple[complex, np.ndarray]:
    """Dominant pair of the block, accurate enough to seed Rayleigh quotient iteration."""
    rng = np.random.default_rng(0)
    v = rng.standard_normal(matrix.shape[0]) + 1j * rng.standard_normal(matrix.shape[0])
    v /= np.linalg.norm(v)
    value = complex(v.conj() @ matrix @ v)
    for _ in range(max_iter):
        w = matrix @ v
        norm = np.linalg.norm(w)
        if norm == 0:
            return 0j, v
        v = w / norm
        value = complex(v.conj() @ matrix @ v)
        if np.linalg.norm(matrix @ v - value * v) <= tol * max(1.0, abs(value)):
            break
    return value, v


def _rayleigh_quotient_iteration(matrix: np.ndarray, value: complex, vector: np.ndarray,
                                 steps: int = 30) -> tuple[complex, np.ndarray, float]:
    """Eigenpair of the block near (value, vector), with its residual."""
    identity = np.eye(matrix.shape[0])
    floor = EIGEN_FLOOR * max(1.0, float(np.abs(matrix).max()))
    x = vector / np.linalg.norm(vector)
    residual = float(np.linalg.norm(matrix @ x - value * x))
    for _ in range(steps):
        if residual <= floor:
            break
        try:
            y = np.linalg.solve(matrix - value * identity, x)
        except np.linalg.LinAlgError:
            break
        norm = np.linalg.norm(y)
        if not np.isfinite(norm) or norm == 0:
            break
        x = y / norm
        value = complex(x.conj() @ matrix @ x)
        residual = float(np.linalg.norm(matrix @ x - value * x))
    return value, x, residual


def _refine(matrix: np.ndarray, shift: complex, steps: int = 30) -> EigenEstimate:
    """Inverse iteration on the full section with a fixed shift next to an eigenvalue of a block."""
    n = matrix.shape[0]
    sigma = shift + 1e-10 * max(1.0, abs(shift))
    shifted = matrix - sigma * np.eye(n)
    rng = np.random.default_rng(n)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x /= np.linalg.norm(x)
    value = shift
    residual = math.inf
    for _ in range(steps):
        try:
            y = np.linalg.solve(shifted, x)
        except np.linalg.LinAlgError:
            break
        norm = np.linalg.norm(y)
        if not np.isfinite(norm) or norm == 0:
            break
        x = y / norm
        value = complex(x.conj() @ matrix @ x)
        residual = float(np.linalg.norm(matrix @ x - value * x))
        if residual <= EIGEN_RESIDUAL_TOL * 1e-3:
            break
    return EigenEstimate(value, residual, residual <= EIGEN_RESIDUAL_TOL)


def _is_duplicate(value: complex, found: list[EigenEstimate]) -> bool:
    return any(abs(value - e.value) <= EIGEN_DUPLICATE_TOL * max(1.0, abs(value)) for e in found)


def truncated_eigenvalues(section: OperatorMatrix, max_iter: int = 500) -> list[EigenEstimate]:
    """
    Eigenvalues of a finite section.

    Triangular sections (affine symbols or symbols fixing 0) return the
    diagonal exactly. Otherwise each step seeds Rayleigh quotient iteration on
    the current block with a power-iteration guess, deflates the block by the
    resulting eigenvector (Householder) and refines the value by inverse
    iteration on the full section. Estimates are sorted by decreasing modulus;
    non-converged ones are kept and flagged, repeats are logged and skipped.
    """
    entries = section.entries
    if section.n > MAX_SECTION_SIZE:
        raise ValidationError(f"composition: eigen-solve limited to n <= {MAX_SECTION_SIZE}", field="n")

    if section.is_upper_triangular() or section.is_lower_triangular():
        return [EigenEstimate(complex(x), 0.0, True) for x in np.diag(entries)]

    tracker = ProcessingLogger("eigenvalue estimation")
    tracker.start(f"n={section.n}")
    estimates: list[EigenEstimate] = []
    remaining = entries.copy()
    while remaining.shape[0] > 0:
        if remaining.shape[0] == 1:
            value, vector = complex(remaining[0, 0]), np.ones(1, dtype=complex)
        else:
            guess, vector = _power_iteration(remaining, max_iter, EIGEN_SEED_TOL)
            value, vector, block_residual = _rayleigh_quotient_iteration(remaining, guess, vector)
            if block_residual > EIGEN_RESIDUAL_TOL:
                logger.warning(f"Deflation vector for {value:.6g} has residual {block_residual:.3g}")
        remaining = _householder_deflate(remaining, vector) if remaining.shape[0] > 1 else remaining[1:, 1:]

        estimate = _refine(entries, value)
        if _is_duplicate(estimate.value, estimates) and not _is_duplicate(value, estimates):
            estimate = EigenEstimate(value, estimate.residual, False)
        if _is_duplicate(estimate.value, estimates):
            logger.warning(f"Eigenvalue {estimate.value:.6g} found twice, keeping the first estimate")
            continue
        if not estimate.converged:
            logger.warning(f"Eigenvalue near {value:.6g} did not converge (residual {estimate.residual:.3g})")
        estimates.append(estimate)
        tracker.progress(f"{len(estimates)}/{section.n} eigenvalues")

    estimates.sort(key=lambda e: -abs(e.value))
    tracker.complete(f"{sum(e.converged for e in estimates)}/{len(estimates)} converged")
    return estimates


# =============================================================================
# Orbits and pairings
# =============================================================================

def orbit_distances(f: WeightedSeries, phi: MoebiusMap, lam: complex, nu: float, k_max: int,
                    modulo_constants: bool = False,
                    tolerances: Optional[Tolerances] = None) -> OrbitRun:
    """
    Distances ||lambda^k f o phi_k - f||_nu for k = 1..k_max.

    Each phi_k comes from exact matrix powering, followed by a single series
    composition. Once the rounded iterate has its pole on the unit circle (or
    collapses to a degenerate matrix) the previous image is composed with phi
    instead. With modulo_constants the constant coefficient is dropped before
    measuring (distance in S_nu modulo constants).
    """
    if k_max < 1:
        raise ValidationError(f"composition: orbit length must be >= 1, got {k_max}", field="K")

    f = f.with_nu(nu)
    lam = complex(lam)
    run = OrbitRun()
    running_min = math.inf

    tracker = ProcessingLogger("orbit")
    tracker.start(f"K={k_max}, lambda={lam}, nu={nu}")
    log_modulus = math.log(abs(lam)) if lam != 0 else -math.inf
    composed = f
    for k in range(1, k_max + 1):
        if k * log_modulus > math.log(OVERFLOW_LIMIT):
            logger.warning(f"Orbit stopped at k={k}: |lambda|^k exceeds {OVERFLOW_LIMIT:g}")
            run.overflow = True
            break

        try:
            composed = compose_series(f, iterate(phi, k, tolerances))
        except ValidationError:
            # 2^k - 1 rounds to 2^k for k > 53
            logger.debug(f"Iterate {k} has a rounded pole on the circle; composing step by step")
            composed = compose_series(composed, phi)
        difference = composed * lam**k - f
        if modulo_constants:
            difference = difference.without_constant()
        distance = norm_nu(difference)
        running_min = min(running_min, distance)
        run.records.append(OrbitRecord(k, distance, running_min))
        tracker.progress(f"k={k}/{k_max} distance={distance:.6g}")

    tracker.complete(f"min distance {running_min:.6g}")
    return run


def first_coefficient_pairing(f: WeightedSeries, phi: MoebiusMap, lam: complex) -> complex:
    """<lambda C_phi f, z>_nu from the composed series."""
    image = apply_lambda_op(f, phi, lam, degree=max(f.degree, 1))
    return inner_product(image, WeightedSeries.monomial(1, f.nu))


def first_coefficient_pairing_closed_form(f: WeightedSeries, phi: MoebiusMap, lam: complex) -> complex:
    """2^(2 nu) lambda f'(phi(0)) phi'(0)."""
    origin = complex(evaluate(phi, 0))
    slope = eval_series(f.derivative(), origin)
    return complex(lam) * 2 ** (2 * f.nu) * slope * derivative_at(phi, 0)


def dirichlet_contraction_ratio(f: WeightedSeries, phi: MoebiusMap, degree: Optional[int] = None) -> float:
    """Dirichlet seminorm of f o phi over that of f (f nonconstant)."""
    base = dirichlet_seminorm_sq(f)
    if base == 0:
        raise ValidationError("composition: contraction ratio needs a nonconstant f", field="f")
    return math.sqrt(dirichlet_seminorm_sq(compose_series(f, phi, degree)) / base)
