"""
Experiment dispatch: turns a map spec and a RunConfig into a Report.

Commands:
    classify  - symbol family, fixed points, Denjoy-Wolff point
    decide    - recurrence verdict for (phi, nu, lambda)
    orbit     - distances ||lambda^k f o phi_k - f||_nu
    matrix    - finite section of lambda C_phi and its eigenvalues
    kernel    - reproducing kernel coefficients and norm check
    spectrum  - spectrum parameters of non-automorphism symbols

sweep() evaluates decide over a (nu, |lambda|) grid.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from enum import Enum, unique
from functools import partial
from typing import Any, Callable, Optional, Sequence

from lfm_recurrence.core.composition import (
    operator_matrix,
    orbit_distances,
    truncated_eigenvalues,
)
from lfm_recurrence.core.config import RunConfig, Tolerances
from lfm_recurrence.core.literals import format_map, parse_map_literal
from lfm_recurrence.core.moebius_core import (
    MapCategory,
    MoebiusMap,
    classify,
    denjoy_wolff,
    is_self_map,
    parabolic_translation_parameter,
)
from lfm_recurrence.core.presets import get_preset
from lfm_recurrence.core.recurrence_oracle import (
    circle_component_flag,
    decide,
    reference_verdict,
    spectrum_description,
)
from lfm_recurrence.core.report_writer import Report
from lfm_recurrence.core.weighted_space import (
    KernelSpec,
    WeightedSeries,
    eval_series,
    inner_product,
    kernel_function,
    kernel_tail_bound,
    norm_nu,
    reproducing_kernel,
)
from lfm_recurrence.utils.error_handler import NotSelfMapError, ValidationError
from lfm_recurrence.utils.logger import ProcessingLogger, get_logger

logger = get_logger(__name__)


@unique
class Command(Enum):
    CLASSIFY = "classify"
    DECIDE = "decide"
    ORBIT = "orbit"
    MATRIX = "matrix"
    KERNEL = "kernel"
    SPECTRUM = "spectrum"

    def __str__(self) -> str:
        return self.value


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def parse_map_spec(text: str, tolerances: Optional[Tolerances] = None) -> MoebiusMap:
    """
    Resolve a preset name or a coefficient literal "a,b,c,d" to a disk self-map.

    Raises:
        ValidationError: unknown preset name (text without commas)
        ParseError: malformed literal (with position)
        DegenerateMapError: ad - bc = 0
        NotSelfMapError: the map does not send the disk into itself
    """
    text = text.strip()
    if "," not in text:
        return get_preset(text).symbol

    phi = parse_map_literal(text)
    if not is_self_map(phi, tolerances):
        raise NotSelfMapError(f"cli_experiments: {text!r} is not a self-map of the unit disk")
    return phi


# =============================================================================
# Commands
# =============================================================================

def _classify_report(phi: MoebiusMap, config: RunConfig, series: Optional[WeightedSeries]) -> Report:
    classification = classify(phi, config.tolerances)
    payload: dict[str, Any] = {"map": format_map(phi), **classification.to_dict()}

    point = classification.denjoy_wolff_point
    payload["denjoy_wolff_point"] = None if point is None else point.to_json()
    if point is not None:
        limit = denjoy_wolff(phi, config.tol, config.max_iter, config.tolerances)
        payload["denjoy_wolff_iterate"] = limit.to_json()
    if classification.category.is_parabolic:
        payload["translation_parameter"] = _pair(parabolic_translation_parameter(phi, config.tolerances))
    return Report(str(Command.CLASSIFY), payload)


def _decide_report(phi: MoebiusMap, config: RunConfig, series: Optional[WeightedSeries]) -> Report:
    verdict = decide(phi, config.nu, config.lam, config.tolerances)
    payload = {"map": format_map(phi), "nu": config.nu, "lambda": _pair(config.lam), **verdict.to_dict()}
    return Report(str(Command.DECIDE), payload)


def _orbit_report(phi: MoebiusMap, config: RunConfig, series: Optional[WeightedSeries]) -> Report:
    f = series if series is not None else WeightedSeries.monomial(1, config.nu)
    f = f.truncated(max(config.degree, f.degree))
    run = orbit_distances(f, phi, config.lam, config.nu, config.max_iter,
                          modulo_constants=config.modulo_constants, tolerances=config.tolerances)
    payload = {
        "map": format_map(phi),
        "nu": config.nu,
        "lambda": _pair(config.lam),
        "modulo_constants": config.modulo_constants,
        "overflow": run.overflow,
        "records": [{"k": r.k, "distance": r.distance, "running_min": r.running_min} for r in run.records],
    }
    rows = [[r.k, r.distance, r.running_min] for r in run.records]
    return Report(str(Command.ORBIT), payload, header=["k", "distance", "running_min"], rows=rows)


def _matrix_report(phi: MoebiusMap, config: RunConfig, series: Optional[WeightedSeries]) -> Report:
    section = operator_matrix(phi, config.nu, config.lam, config.size)
    estimates = truncated_eigenvalues(section, max_iter=config.max_iter)
    payload = {
        "map": format_map(phi),
        "n": section.n,
        "nu": config.nu,
        "lambda": _pair(config.lam),
        "entries": section.to_json(),
        "eigenvalues": [
            {"value": _pair(e.value), "residual": e.residual, "converged": e.converged} for e in estimates
        ],
    }
    rows = [[i, e.value.real, e.value.imag, e.residual, e.converged] for i, e in enumerate(estimates)]
    return Report(str(Command.MATRIX), payload, header=["index", "re", "im", "residual", "converged"], rows=rows)


def _kernel_report(phi: Optional[MoebiusMap], config: RunConfig, series: Optional[WeightedSeries]) -> Report:
    spec = KernelSpec(config.w, config.nu, config.degree)
    kernel = reproducing_kernel(spec)
    x = abs(spec.w) ** 2
    tail = kernel_tail_bound(x, spec.nu, spec.degree)
    payload: dict[str, Any] = {
        "w": _pair(spec.w),
        "nu": spec.nu,
        "degree": spec.degree,
        "coefficients": kernel.to_json(),
        "norm_sq": norm_nu(kernel) ** 2,
        "kernel_value": kernel_function(x, spec.nu, spec.degree).real,
        "tail_bound": tail if math.isfinite(tail) else None,
        "tail_bound_finite": math.isfinite(tail),
    }
    if series is not None:
        f = series.with_nu(spec.nu)
        pairing = inner_product(f, kernel)
        value = eval_series(f, spec.w)
        payload["pairing"] = _pair(pairing)
        payload["value"] = _pair(value)
        payload["reproducing_error"] = abs(pairing - value)
    return Report(str(Command.KERNEL), payload)


def _spectrum_report(phi: MoebiusMap, config: RunConfig, series: Optional[WeightedSeries]) -> Report:
    description = spectrum_description(phi, config.nu, config.k_max, config.tolerances)
    payload = {
        "map": format_map(phi),
        "nu": config.nu,
        **description.to_dict(),
        "circle_component_flag": circle_component_flag(description, config.tolerances.eps_dec),
    }
    return Report(str(Command.SPECTRUM), payload)


_HANDLERS: dict[Command, Callable[..., Report]] = {
    Command.CLASSIFY: _classify_report,
    Command.DECIDE: _decide_report,
    Command.ORBIT: _orbit_report,
    Command.MATRIX: _matrix_report,
    Command.KERNEL: _kernel_report,
    Command.SPECTRUM: _spectrum_report,
}


def run_command(command: str, spec: Optional[str], config: RunConfig,
                series: Optional[WeightedSeries] = None) -> Report:
    """
    Run one experiment.

    Args:
        command: One of the Command values
        spec: Preset name or map literal (ignored by kernel)
        config: Run parameters
        series: Input series for orbit/kernel (orbit defaults to f = z)

    Returns:
        Report for the command
    """
    try:
        cmd = Command(command)
    except ValueError:
        raise ValidationError(f"cli_experiments: unknown command {command!r}", field="command") from None

    if cmd == Command.KERNEL:
        return _kernel_report(None, config, series)
    if spec is None:
        raise ValidationError(f"cli_experiments: {cmd} needs --map or --preset", field="map")

    phi = parse_map_spec(spec, config.tolerances)
    logger.info(f"Running {cmd} for {format_map(phi)}")
    return _HANDLERS[cmd](phi, config, series)


# =============================================================================
# Sweeps
# =============================================================================

def _sweep_row(category: MapCategory, mu: Optional[float], abs_lambdas: Sequence[float],
               tolerances: Tolerances, nu: float) -> list[list[Any]]:
    rows = []
    for abs_lambda in abs_lambdas:
        verdict = reference_verdict(category, mu, nu, abs_lambda, tolerances)
        rows.append([nu, abs_lambda, "yes" if verdict.recurrent else "no", str(verdict.rule), verdict.boundary])
    return rows


def sweep(spec: str, nu_grid: Sequence[float], lambda_grid: Sequence[float], config: RunConfig) -> Report:
    """
    Recurrence verdicts over a (nu, |lambda|) grid, nu-major.

    The symbol is classified once; cells are evaluated row by row, in parallel
    when config.workers > 1. Row order does not depend on the worker count.

    Raises:
        ValidationError: for empty grids, lambda = 0 or non-finite values
    """
    nu_values = [float(nu) for nu in nu_grid]
    abs_lambdas = [abs(complex(lam)) for lam in lambda_grid]
    if not nu_values or not abs_lambdas:
        raise ValidationError("cli_experiments: sweep grids must be non-empty", field="grid")
    if any(a == 0 or not math.isfinite(a) for a in abs_lambdas):
        raise ValidationError("cli_experiments: sweep |lambda| values must be finite and nonzero",
                              field="lambda")

    phi = parse_map_spec(spec, config.tolerances)
    classification = classify(phi, config.tolerances)
    category = classification.category
    mu = classification.derivative_at_attractive.real if category in (
        MapCategory.HYPERBOLIC_AUTOMORPHISM, MapCategory.HYPERBOLIC_NON_AUTOMORPHISM) else None

    tracker = ProcessingLogger("sweep")
    tracker.start(f"{len(nu_values)} x {len(abs_lambdas)} cells for {category}")
    row_of = partial(_sweep_row, category, mu, abs_lambdas, config.tolerances)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            blocks = list(executor.map(row_of, nu_values))
    else:
        blocks = [row_of(nu) for nu in nu_values]

    rows = [row for block in blocks for row in block]
    flagged = sum(1 for row in rows if row[4])
    tracker.complete(f"{len(rows)} cells, {flagged} on a threshold")

    payload = {
        "map": format_map(phi),
        "category": str(category),
        "mu": mu,
        "cells": [
            {"nu": r[0], "abs_lambda": r[1], "recurrent": r[2] == "yes", "rule": r[3], "boundary": r[4]}
            for r in rows
        ],
    }
    return Report("sweep", payload, header=["nu", "abs_lambda", "recurrent", "rule", "boundary"], rows=rows)
