"""Pydantic models for fractional-thermistor.

This package contains all data models: configuration, the numerical
containers shared between modules, and the records written by runs and
studies.
"""

from __future__ import annotations

from fracthermistor.models.base import ArrayModel, ThermistorModel, frozen_array
from fracthermistor.models.config import PicardSettings, ProblemConfig
from fracthermistor.models.functions import (
    Conductivity,
    ManufacturedSolution,
    Profile,
    SourceTerm,
    TimeFactor,
)
from fracthermistor.models.records import (
    CheckResult,
    ConvergenceStudy,
    HypothesisReport,
    RunManifest,
    RunRecord,
    StudyPoint,
)
from fracthermistor.models.spectral import QuadratureRule, SpectralSpace
from fracthermistor.models.time import FractionalOrder, L1Weights, TimeGrid

__all__ = [
    # Base
    "ThermistorModel",
    "ArrayModel",
    "frozen_array",
    # Time
    "FractionalOrder",
    "TimeGrid",
    "L1Weights",
    # Space
    "QuadratureRule",
    "SpectralSpace",
    # Functions
    "Profile",
    "SourceTerm",
    "Conductivity",
    "TimeFactor",
    "ManufacturedSolution",
    # Configuration
    "PicardSettings",
    "ProblemConfig",
    # Records
    "RunRecord",
    "HypothesisReport",
    "ConvergenceStudy",
    "CheckResult",
    "RunManifest",
    "StudyPoint",
]
