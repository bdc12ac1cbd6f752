"""Pydantic models for the fractional time discretization.

This module provides the fractional order, the uniform time grid and the
L1 weight table consumed by :mod:`fracthermistor.time_fractional`.
"""

from __future__ import annotations

import numpy as np
from pydantic import Field

from fracthermistor.models.base import ArrayModel, ThermistorModel


class FractionalOrder(ThermistorModel):
    """Order of the Caputo derivative.

    Attributes:
        alpha: Order, strictly inside (0, 1).

    Example:
        >>> FractionalOrder(alpha=0.5).alpha
        0.5
        >>> FractionalOrder(alpha=1.0)
        Traceback (most recent call last):
        pydantic_core._pydantic_core.ValidationError: ...
    """

    alpha: float = Field(gt=0.0, lt=1.0, description="Order of the Caputo derivative")


class TimeGrid(ThermistorModel):
    """Uniform grid t_k = k * delta on [0, T].

    Attributes:
        T: Final time.
        K: Number of steps.

    Example:
        >>> grid = TimeGrid(T=1.0, K=10)
        >>> grid.delta
        0.1
    """

    T: float = Field(gt=0.0, description="Final time")
    K: int = Field(ge=1, description="Number of time steps")

    @property
    def delta(self) -> float:
        """Step length T / K."""
        return self.T / self.K

    def time(self, k: int) -> float:
        """Return t_k.

        The last node is returned as ``T`` itself so that t_K = T exactly.

        Args:
            k: Step index in 0..K.

        Returns:
            The time of step ``k``.
        """
        if k == self.K:
            return self.T
        return k * self.delta

    def times(self) -> np.ndarray:
        """Return all nodes t_0..t_K."""
        nodes = np.arange(self.K + 1, dtype=np.float64) * self.delta
        nodes[-1] = self.T
        return nodes


class L1Weights(ArrayModel):
    """The L1 weights b_j and the scale alpha0 = Gamma(2 - alpha) * delta^alpha.

    Attributes:
        alpha: Fractional order.
        delta: Step length the weights were built for.
        b: Read-only vector b_0..b_{K-1}.
        alpha0: Scale multiplying the Laplacian in each step.
    """

    alpha: float
    delta: float
    b: np.ndarray
    alpha0: float

    @property
    def K(self) -> int:  # noqa: N802
        """Number of steps covered by the table."""
        return int(self.b.shape[0])

    def weight(self, j: int) -> float:
        """Return b_j, extending the table by the closed form past K - 1.

        ``history_combination`` at k = K - 1 needs b_{K-1} only, but the
        telescoping identity at k = K - 1 touches b_K.

        Args:
            j: Non-negative index.

        Returns:
            The weight b_j.
        """
        if j < self.K:
            return float(self.b[j])
        one_minus = 1.0 - self.alpha
        return float((j + 1) ** one_minus - j**one_minus)
