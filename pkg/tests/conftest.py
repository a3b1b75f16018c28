"""Shared fixtures for the lfm-recurrence test suite."""

from __future__ import annotations

import logging

import numpy as np
import pytest

from lfm_recurrence.core.config import RunConfig, Tolerances
from lfm_recurrence.core.moebius_core import MoebiusMap
from lfm_recurrence.core.presets import PRESETS
from lfm_recurrence.utils.logger import PACKAGE_LOGGER


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so random suites are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def tolerances() -> Tolerances:
    return Tolerances()


@pytest.fixture
def config() -> RunConfig:
    return RunConfig()


@pytest.fixture(params=sorted(PRESETS))
def preset_name(request: pytest.FixtureRequest) -> str:
    return request.param


@pytest.fixture
def hyperbolic_auto() -> MoebiusMap:
    return PRESETS["hyperbolic-auto"].symbol


@pytest.fixture
def hyperbolic_nonauto() -> MoebiusMap:
    return PRESETS["hyperbolic-nonauto"].symbol


@pytest.fixture
def parabolic_auto() -> MoebiusMap:
    return PRESETS["parabolic-auto"].symbol


@pytest.fixture
def parabolic_nonauto() -> MoebiusMap:
    return PRESETS["parabolic-nonauto"].symbol


@pytest.fixture
def random_poly(rng: np.random.Generator):
    """Factory for coefficient vectors with parts uniform in [0, 1)."""

    def make(degree: int) -> np.ndarray:
        return rng.random(degree + 1) + 1j * rng.random(degree + 1)

    return make


@pytest.fixture
def package_caplog(caplog: pytest.LogCaptureFixture):
    """caplog wired to the package logger, which does not propagate to root."""
    package_logger = logging.getLogger(PACKAGE_LOGGER)
    package_logger.addHandler(caplog.handler)
    try:
        yield caplog
    finally:
        package_logger.removeHandler(caplog.handler)
