"""Pydantic models for problem configuration.

This module provides :class:`ProblemConfig`, the single object that fully
determines a run, and its Picard sub-settings.

Example:
    Building a configuration in code::

        from fracthermistor.models.config import ProblemConfig

        config = ProblemConfig(alpha=0.5, lam=0.5, T=1.0, K=64, N=24,
                               conductivity="shifted_sine", u0="sinpi")
"""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import ConfigDict, Field, field_serializer, field_validator

from fracthermistor.models.base import ThermistorModel
from fracthermistor.models.functions import Profile, SourceTerm
from fracthermistor.models.time import FractionalOrder, TimeGrid


class PicardSettings(ThermistorModel):
    """Stopping rule of the per-step fixed-point iteration.

    Attributes:
        tol: Infinity-norm bound on the increment of the coefficients.
        max_iter: Iteration budget per step.
    """

    tol: float = Field(default=1e-12, gt=0.0, description="Increment tolerance")
    max_iter: int = Field(default=50, ge=1, description="Iteration budget")


class ProblemConfig(ThermistorModel):
    """Everything that determines a run of the fully discrete scheme.

    Attributes:
        alpha: Caputo order in (0, 1).
        lam: The dimensionless parameter lambda >= 0 (alias ``lambda``).
        T: Final time.
        K: Number of time steps.
        N: Spectral degree; the trial space has dimension N - 1.
        conductivity: Registry id of the conductivity f.
        u0: Initial profile; a preset name is resolved on validation.
        source: Optional forcing g(x, t), zero when ``None``.
        picard: Fixed-point stopping rule.
        nonlocal_alpha0_factor: Multiply the nonlocal load by alpha0.
        linearization: ``picard`` solves the implicit step, ``lagged``
            evaluates the nonlocal term at the previous step.
        quadrature_extra: Extra Gauss-Lobatto points beyond N for inner
            products involving f(u).
        scheme_form: ``convex`` assembles the history term as a convex
            combination, ``difference`` as b_0 u^k minus weighted increments.
    """

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(gt=0.0, lt=1.0, description="Caputo order")
    lam: float = Field(alias="lambda", ge=0.0, description="Parameter lambda")
    T: float = Field(gt=0.0, description="Final time")
    K: int = Field(ge=1, description="Number of time steps")
    N: int = Field(ge=2, description="Spectral degree")
    conductivity: str = Field(default="const_one", description="Conductivity id")
    u0: Profile = Field(default="sinpi", description="Initial profile")  # type: ignore[assignment]
    source: Optional[SourceTerm] = Field(default=None, description="Forcing g(x, t)")
    picard: PicardSettings = Field(default_factory=PicardSettings)
    nonlocal_alpha0_factor: bool = Field(default=True)
    linearization: Literal["picard", "lagged"] = Field(default="picard")
    quadrature_extra: int = Field(default=16, ge=0)
    scheme_form: Literal["convex", "difference"] = Field(default="convex")

    @field_validator("u0", mode="before")
    @classmethod
    def _resolve_profile(cls, value: Any) -> Any:
        if isinstance(value, str):
            from fracthermistor.presets import get_profile

            return get_profile(value)
        return value

    @field_validator("source", mode="before")
    @classmethod
    def _resolve_source(cls, value: Any) -> Any:
        if isinstance(value, str):
            if value.lower() == "none":
                return None
            msg = (
                f"source preset {value!r} depends on the rest of the configuration; "
                "resolve it with settings.load_config or verify.manufactured_source"
            )
            raise ValueError(msg)
        return value

    @field_validator("conductivity")
    @classmethod
    def _known_conductivity(cls, value: str) -> str:
        from fracthermistor.nonlocal_source import conductivity_ids

        if value not in conductivity_ids():
            msg = f"unknown conductivity {value!r}; known: {sorted(conductivity_ids())}"
            raise ValueError(msg)
        return value

    @field_serializer("u0")
    def _profile_name(self, value: Profile) -> str:
        return value.name

    @field_serializer("source")
    def _source_name(self, value: Optional[SourceTerm]) -> str:
        return "none" if value is None else value.name

    @property
    def order(self) -> FractionalOrder:
        """The fractional order as a validated model."""
        return FractionalOrder(alpha=self.alpha)

    @property
    def grid(self) -> TimeGrid:
        """The uniform time grid."""
        return TimeGrid(T=self.T, K=self.K)

    @property
    def quadrature_points(self) -> int:
        """Number of Gauss-Lobatto points for nonlinear inner products."""
        return self.N + self.quadrature_extra
