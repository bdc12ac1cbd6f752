"""L1 discretization of the Caputo derivative on a uniform grid.

The Caputo derivative of order 0 < alpha < 1 at t_{k+1} is approximated by

    L u(t_{k+1}) = 1 / Gamma(2 - alpha) * sum_{j=0}^{k} b_j
                   (u(t_{k+1-j}) - u(t_{k-j})) / delta^alpha,

    b_j = (j + 1)^(1 - alpha) - j^(1 - alpha),

with truncation error O(delta^(2 - alpha)). Multiplying by
alpha0 = Gamma(2 - alpha) delta^alpha and moving the known history to the
right turns each implicit step into u^{k+1} - alpha0 * Laplacian u^{k+1} =
f^k + ..., where f^k is a convex combination of u^0..u^k.

Example:
    Weights and the discrete operator::

        from fracthermistor.models import FractionalOrder, TimeGrid
        from fracthermistor.time_fractional import compute_weights, l1_caputo_apply

        weights = compute_weights(FractionalOrder(alpha=0.5), TimeGrid(T=1.0, K=10))
        value = l1_caputo_apply(samples, weights)
"""

from __future__ import annotations

import logging
from typing import Sequence, Union

import numpy as np
from scipy.special import gamma

from fracthermistor.exceptions import ContractViolationError
from fracthermistor.models.base import frozen_array
from fracthermistor.models.time import FractionalOrder, L1Weights, TimeGrid

logger = logging.getLogger(__name__)

History = Union[Sequence[np.ndarray], np.ndarray]


def compute_weights(alpha: Union[FractionalOrder, float], grid: TimeGrid) -> L1Weights:
    """Build the L1 weight table for a fractional order and a time grid.

    The weights are evaluated from the closed form rather than a recurrence;
    for K <= 10^4 the cancellation in the difference of powers stays below
    1e-12 in absolute terms.

    Args:
        alpha: Fractional order, as a model or a bare float in (0, 1).
        grid: Uniform time grid with K >= 1.

    Returns:
        Weights b_0..b_{K-1} and alpha0 = Gamma(2 - alpha) * delta^alpha.

    Raises:
        pydantic.ValidationError: If a bare float alpha lies outside (0, 1).

    Example:
        >>> w = compute_weights(0.5, TimeGrid(T=1.0, K=10))
        >>> round(w.b[1], 10)
        0.4142135624
    """
    order = alpha if isinstance(alpha, FractionalOrder) else FractionalOrder(alpha=alpha)
    a = order.alpha
    j = np.arange(grid.K, dtype=np.float64)
    b = (j + 1.0) ** (1.0 - a) - j ** (1.0 - a)
    alpha0 = float(gamma(2.0 - a) * grid.delta**a)
    logger.debug("L1 weights: alpha=%s K=%d delta=%s alpha0=%s", a, grid.K, grid.delta, alpha0)
    return L1Weights(alpha=a, delta=grid.delta, b=frozen_array(b), alpha0=alpha0)


def convex_coefficients(weights: L1Weights, k: int) -> np.ndarray:
    """Return the coefficients of u^0..u^k in the history combination f^k.

    Entry ``m`` multiplies u^m: a_k = 1 - b_1, a_{k-j} = b_j - b_{j+1} for
    j = 1..k-1 and a_0 = b_k. For k = 0 the combination is u^0 itself.

    Args:
        weights: L1 weight table.
        k: Step index, 0 <= k < K.

    Returns:
        Non-negative coefficients summing to one.

    Raises:
        ContractViolationError: If k is outside the table.
    """
    if not 0 <= k < weights.K:
        msg = f"step index k must satisfy 0 <= k < K = {weights.K}, got {k}"
        raise ContractViolationError(msg)
    coeffs = np.empty(k + 1)
    if k == 0:
        coeffs[0] = 1.0
        return coeffs
    b = weights.b
    coeffs[k] = 1.0 - b[1]
    j = np.arange(1, k)
    coeffs[k - j] = b[j] - b[j + 1]
    coeffs[0] = b[k]
    return coeffs


def _stack_history(history: History, k: int) -> np.ndarray:
    if len(history) != k + 1:
        msg = f"history must hold k + 1 = {k + 1} entries, got {len(history)}"
        raise ContractViolationError(msg)
    if isinstance(history, np.ndarray) and history.ndim == 2:
        return history
    sizes = {np.shape(entry) for entry in history}
    if len(sizes) != 1:
        msg = f"history entries must share one length, got shapes {sorted(sizes)}"
        raise ContractViolationError(msg)
    return np.vstack(history)


def history_combination(history: History, weights: L1Weights, k: int) -> np.ndarray:
    """Compute f^k = (1 - b_1) u^k + sum_{j=1}^{k-1} (b_j - b_{j+1}) u^{k-j} + b_k u^0.

    Small k follow the worked instances of the scheme: f^0 = u^0 and
    f^1 = (1 - b_1) u^1 + b_1 u^0.

    Args:
        history: Coefficient vectors u^0..u^k, as a list or a (k + 1, n) array.
        weights: L1 weight table.
        k: Step index, 0 <= k < K.

    Returns:
        The coefficient vector of f^k.

    Raises:
        ContractViolationError: If the history length or shapes mismatch.

    Example:
        >>> e1, e2 = np.eye(2)
        >>> history_combination([e2, e1], compute_weights(0.5, grid), k=1)
        array([0.58578644, 0.41421356])
    """
    stacked = _stack_history(history, k)
    return convex_coefficients(weights, k) @ stacked


def difference_form(history: History, weights: L1Weights, k: int) -> np.ndarray:
    """Compute b_0 u^k - sum_{j=1}^{k} b_j (u^{k+1-j} - u^{k-j}).

    Algebraically identical to :func:`history_combination`; kept as an
    independent assembly of the same right-hand side.

    Args:
        history: Coefficient vectors u^0..u^k.
        weights: L1 weight table.
        k: Step index, 0 <= k < K.

    Returns:
        The coefficient vector of the history term.

    Raises:
        ContractViolationError: If the history length or shapes mismatch.
    """
    if not 0 <= k < weights.K:
        msg = f"step index k must satisfy 0 <= k < K = {weights.K}, got {k}"
        raise ContractViolationError(msg)
    stacked = _stack_history(history, k)
    b = weights.b
    if k == 0:
        return b[0] * stacked[0]
    increments = np.diff(stacked, axis=0)
    return b[0] * stacked[k] - b[k:0:-1] @ increments


def l1_caputo_apply(samples: Union[Sequence[float], np.ndarray], weights: L1Weights) -> float:
    """Apply the discrete operator to scalar samples u(t_0)..u(t_{k+1}).

    Args:
        samples: k + 2 >= 2 samples on the grid of ``weights``.
        weights: L1 weight table with K >= k + 1.

    Returns:
        The L1 approximation of the Caputo derivative at t_{k+1}.

    Raises:
        ContractViolationError: If fewer than two samples are given or the
            table is too short.

    Example:
        >>> grid = TimeGrid(T=1.0, K=4)
        >>> l1_caputo_apply(grid.times(), compute_weights(0.5, grid))
        1.1283791670955126
    """
    values = np.asarray(samples, dtype=np.float64)
    if values.ndim != 1 or values.size < 2:
        msg = f"need at least two samples, got {values.size}"
        raise ContractViolationError(msg)
    k = values.size - 2
    if k >= weights.K:
        msg = f"{values.size} samples need K >= {k + 1}, table has K = {weights.K}"
        raise ContractViolationError(msg)
    increments = np.diff(values)
    return float(weights.b[k::-1] @ increments / weights.alpha0)


def memory_bound_ratio(weights: L1Weights) -> np.ndarray:
    """Return k^(-alpha) / b_{k-1} for k = 1..K.

    Every entry is bounded by 1 / (1 - alpha), the estimate that turns the
    stability recursion of the scheme into a bound uniform in k.

    Args:
        weights: L1 weight table.

    Returns:
        The ratios, length K.
    """
    k = np.arange(1, weights.K + 1, dtype=np.float64)
    return k ** (-weights.alpha) / weights.b
