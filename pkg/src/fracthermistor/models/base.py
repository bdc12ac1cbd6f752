"""Base Pydantic models for fractional-thermistor.

This module provides the base model classes that all other models inherit
from, with common configuration for validation and serialization.

Example:
    Creating a custom model::

        from fracthermistor.models.base import ThermistorModel


        class Sweep(ThermistorModel):
            name: str
            points: int
"""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict


class ThermistorModel(BaseModel):
    """Base model class for configuration and report models.

    This class provides common configuration for all models including:
    - Population by field name or alias (``lam`` or ``lambda``)
    - Unknown fields are rejected, so typos in configuration surface early
    - Non-finite floats are rejected
    - Default values are validated

    Example:
        Creating a custom model::

            class Interval(ThermistorModel):
                lower: float
                upper: float


            interval = Interval(lower=-10.0, upper=10.0)
            data = interval.model_dump()
    """

    model_config = ConfigDict(
        # Allow population by field name or alias
        populate_by_name=True,
        # Reject unknown keys
        extra="forbid",
        # Use enum values instead of enum members
        use_enum_values=True,
        # Validate default values
        validate_default=True,
        # Strip whitespace from strings
        str_strip_whitespace=True,
        # NaN and infinity are never meaningful inputs
        allow_inf_nan=False,
    )


class ArrayModel(BaseModel):
    """Base model class for immutable containers of numpy arrays.

    Arrays are stored read-only; use :func:`frozen_array` when building
    them. Instances are not hashable, since the frozen-model hash covers
    the array fields, and are safe to share between threads.
    """

    model_config = ConfigDict(
        arbitrary_types_allowed=True,
        frozen=True,
        extra="forbid",
    )


def frozen_array(values: object) -> np.ndarray:
    """Return a float64 copy of ``values`` with the write flag cleared.

    Args:
        values: Anything ``numpy.array`` accepts.

    Returns:
        A read-only float64 array.
    """
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array
