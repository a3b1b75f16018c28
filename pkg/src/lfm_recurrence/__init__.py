"""
lfm-recurrence

Recurrence of weighted composition operators lambda C_phi with linear fractional
symbols on the weighted Dirichlet spaces S_nu: symbol classification, the
recurrence decision procedure, and numerical experiments on truncated series.

Version: 1.0.0
"""

from __future__ import annotations

__version__ = "1.0.0"
__license__ = "MIT"

# Public API
from lfm_recurrence.core.composition import (
    apply_lambda_op,
    compose_series,
    operator_matrix,
    orbit_distances,
    taylor_of_map,
    truncated_eigenvalues,
)
from lfm_recurrence.core.config import RunConfig, Tolerances, get_default_tolerances
from lfm_recurrence.core.moebius_core import MapCategory, MoebiusMap, classify, fixed_points, iterate
from lfm_recurrence.core.recurrence_oracle import RecurrenceVerdict, decide, spectrum_description
from lfm_recurrence.core.weighted_space import KernelSpec, WeightedSeries, inner_product, norm_nu

__all__ = [
    "MoebiusMap",
    "MapCategory",
    "classify",
    "fixed_points",
    "iterate",
    "WeightedSeries",
    "KernelSpec",
    "norm_nu",
    "inner_product",
    "taylor_of_map",
    "compose_series",
    "apply_lambda_op",
    "operator_matrix",
    "orbit_distances",
    "truncated_eigenvalues",
    "RecurrenceVerdict",
    "decide",
    "spectrum_description",
    "RunConfig",
    "Tolerances",
    "get_default_tolerances",
]
