"""Pydantic models wrapping the user-supplied functions of a problem.

A problem is defined by three kinds of functions: the initial profile
u0(x), an optional forcing g(x, t), and the conductivity f(u). Each is
carried with the metadata the solver and the hypothesis checker need.
"""

from __future__ import annotations

from typing import Callable, Optional, Tuple

import numpy as np
from pydantic import ConfigDict, Field
from scipy.special import gamma

from fracthermistor.models.base import ThermistorModel

SpatialFunction = Callable[[np.ndarray], np.ndarray]
SpaceTimeFunction = Callable[[np.ndarray, float], np.ndarray]
ScalarFunction = Callable[[np.ndarray], np.ndarray]


class Profile(ThermistorModel):
    """A function of x on [-1, 1] with optional analytic derivatives.

    Attributes:
        name: Identifier written to manifests.
        value: psi(x), vectorised over numpy arrays.
        derivative: psi'(x) if known analytically.
        second_derivative: psi''(x) if known analytically.

    Example:
        >>> profile = Profile(
        ...     name="sinpi",
        ...     value=lambda x: np.sin(np.pi * x),
        ...     derivative=lambda x: np.pi * np.cos(np.pi * x),
        ... )
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Identifier written to manifests")
    value: SpatialFunction = Field(description="psi(x)")
    derivative: Optional[SpatialFunction] = Field(default=None, description="psi'(x)")
    second_derivative: Optional[SpatialFunction] = Field(
        default=None, description="psi''(x)"
    )

    def __call__(self, x: np.ndarray) -> np.ndarray:
        """Evaluate the profile."""
        return np.asarray(self.value(np.asarray(x, dtype=np.float64)), dtype=np.float64)


class SourceTerm(ThermistorModel):
    """A forcing g(x, t) added to the right-hand side of the equation.

    Attributes:
        name: Identifier written to manifests.
        func: g(x, t), vectorised over x.
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Identifier written to manifests")
    func: SpaceTimeFunction = Field(description="g(x, t)")

    def __call__(self, x: np.ndarray, t: float) -> np.ndarray:
        """Evaluate the forcing."""
        return np.asarray(self.func(np.asarray(x, dtype=np.float64), t), dtype=np.float64)


class Conductivity(ThermistorModel):
    """A temperature-dependent conductivity f with its hypothesis metadata.

    Attributes:
        id: Registry name.
        f: f(xi), vectorised.
        f_prime: f'(xi), used only when sampling hypotheses.
        lower_bound: The constant c in c <= f(xi).
        upper_constant: The constant C in f(xi) <= C|xi|^(beta+1) + C.
        beta: Growth exponent of the upper envelope.
        checked: False for user functions whose metadata is asserted, not verified.
    """

    model_config = ConfigDict(frozen=True)

    id: str = Field(description="Registry name")
    f: ScalarFunction = Field(description="Conductivity f")
    f_prime: Optional[ScalarFunction] = Field(default=None, description="Derivative f'")
    lower_bound: float = Field(gt=0.0, description="Lower constant c of the growth bound")
    upper_constant: float = Field(gt=0.0, description="Upper envelope constant of the growth bound")
    beta: float = Field(default=0.0, ge=0.0, description="Exponent beta of the growth bound")
    checked: bool = Field(default=True, description="Metadata verified by the package")

    def __call__(self, xi: np.ndarray) -> np.ndarray:
        """Evaluate f."""
        return np.asarray(self.f(np.asarray(xi, dtype=np.float64)), dtype=np.float64)


class TimeFactor(ThermistorModel):
    """A polynomial time factor w(t) = sum_p a_p t^p with its Caputo derivative.

    Attributes:
        name: Identifier used in preset names.
        coefficients: a_0, a_1, ... in increasing degree.

    Example:
        >>> w = TimeFactor(name="t2", coefficients=[0.0, 0.0, 1.0])
        >>> round(w.caputo(1.0, 0.5), 10)
        1.5045055561
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Identifier")
    coefficients: Tuple[float, ...] = Field(min_length=1, description="Monomial coefficients")

    def __call__(self, t: float) -> float:
        """Evaluate w(t)."""
        return float(sum(a * t**p for p, a in enumerate(self.coefficients)))

    def derivative(self, t: float) -> float:
        """Evaluate w'(t)."""
        return float(sum(p * a * t ** (p - 1) for p, a in enumerate(self.coefficients) if p))

    def caputo(self, t: float, alpha: float) -> float:
        """Closed-form Caputo derivative of order alpha at t.

        Uses d^alpha t^p = Gamma(p + 1) / Gamma(p + 1 - alpha) t^(p - alpha)
        for p >= 1; constants have zero derivative.
        """
        return float(
            sum(
                a * gamma(p + 1.0) / gamma(p + 1.0 - alpha) * t ** (p - alpha)
                for p, a in enumerate(self.coefficients)
                if p and a
            )
        )


class ManufacturedSolution(ThermistorModel):
    """A separable exact solution u(x, t) = w(t) phi(x).

    Attributes:
        name: Preset name.
        time: Time factor w.
        shape: Spatial factor phi with derivatives up to second order.
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Preset name")
    time: TimeFactor
    shape: Profile

    def __call__(self, x: np.ndarray, t: float) -> np.ndarray:
        """Evaluate u(x, t)."""
        return self.time(t) * self.shape(x)

    def at(self, t: float) -> Profile:
        """Return u(., t) as a profile, derivatives included."""
        scale = self.time(t)
        shape = self.shape
        derivative = shape.derivative
        second = shape.second_derivative
        return Profile(
            name=f"{self.name}@{t!r}",
            value=lambda x: scale * shape(x),
            derivative=None if derivative is None else (lambda x: scale * derivative(x)),
            second_derivative=None if second is None else (lambda x: scale * second(x)),
        )
