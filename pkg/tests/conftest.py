"""Pytest configuration and fixtures for fractional-thermistor tests.

This module provides common fixtures and configuration for all tests.
"""

from __future__ import annotations

from pathlib import Path
from typing import Callable, Generator

import numpy as np
import pytest

from fracthermistor.models import L1Weights, ProblemConfig, SpectralSpace, TimeGrid
from fracthermistor.models.functions import Conductivity
from fracthermistor.nonlocal_source import register_conductivity, unregister_conductivity
from fracthermistor.spectral_basis import make_space
from fracthermistor.time_fractional import compute_weights


@pytest.fixture
def grid() -> TimeGrid:
    """Provide a ten-step grid on [0, 1]."""
    return TimeGrid(T=1.0, K=10)


@pytest.fixture
def weights(grid: TimeGrid) -> L1Weights:
    """Provide L1 weights for alpha = 0.5 on the ten-step grid."""
    return compute_weights(0.5, grid)


@pytest.fixture
def space() -> SpectralSpace:
    """Provide the spectral space of degree 16."""
    return make_space(16)


@pytest.fixture
def base_config() -> ProblemConfig:
    """Provide a linear configuration (lambda = 0)."""
    return ProblemConfig(alpha=0.5, lam=0.0, T=1.0, K=10, N=16)


@pytest.fixture
def nonlinear_config() -> ProblemConfig:
    """Provide a configuration with the shifted-sine conductivity."""
    return ProblemConfig(
        alpha=0.5, lam=0.5, T=1.0, K=10, N=16, conductivity="shifted_sine"
    )


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[[str], Path]:
    """Provide a writer of configuration files into a temporary directory.

    Example:
        def test_load(write_config):
            path = write_config("alpha = 0.5\\nlambda = 0\\nT = 1\\nK = 4\\nN = 8\\n")
            config = load_config(path)
    """

    def write(text: str, name: str = "run.cfg") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture
def user_conductivity() -> Generator[Conductivity, None, None]:
    """Register a user conductivity and remove it afterwards."""
    cond = register_conductivity(
        "test_cosh_ratio",
        lambda xi: 1.0 + 1.0 / np.cosh(xi),
        lower_bound=1.0,
        upper_constant=2.0,
    )
    yield cond
    unregister_conductivity(cond.id)
