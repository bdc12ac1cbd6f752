"""The nonlocal source lambda f(u) / (integral of f(u))^2.

This module evaluates the denominator integral, assembles the Galerkin load
vector of the nonlocal term, and samples conductivities against the
hypotheses that guarantee a smooth unique solution:

    regularity: f is positive, Lipschitz and C^1;
    growth: c <= f(xi) <= C |xi|^(beta + 1) + C for all xi.

Conductivities live in a registry so that the hypothesis metadata travels
with each f. Three are built in; user functions can be registered and are
flagged as unchecked.

Example:
    Assembling the load of a coefficient vector::

        from fracthermistor.nonlocal_source import get_conductivity, nonlocal_load

        cond = get_conductivity("shifted_sine")
        g = nonlocal_load(c, cond, lam=0.5, alpha0=0.28, space=space)
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from fracthermistor.exceptions import (
    ConfigurationError,
    ContractViolationError,
    DegenerateDenominatorError,
)
from fracthermistor.models.functions import Conductivity
from fracthermistor.models.records import HypothesisReport
from fracthermistor.models.spectral import SpectralSpace
from fracthermistor.spectral_basis import load_vector

logger = logging.getLogger(__name__)

#: Smallest accepted value of the integral of f(u).
DENOMINATOR_THRESHOLD = 1e-12


def _const_one(xi: np.ndarray) -> np.ndarray:
    return np.ones_like(xi)


def _zero(xi: np.ndarray) -> np.ndarray:
    return np.zeros_like(xi)


def _shifted_sine(xi: np.ndarray) -> np.ndarray:
    return 2.0 + np.sin(xi)


def _sat_quadratic(xi: np.ndarray) -> np.ndarray:
    return 1.0 + xi**2 / (1.0 + xi**2)


def _sat_quadratic_prime(xi: np.ndarray) -> np.ndarray:
    return 2.0 * xi / (1.0 + xi**2) ** 2


_BUILTIN = (
    Conductivity(id="const_one", f=_const_one, f_prime=_zero, lower_bound=1.0, upper_constant=1.0),
    Conductivity(
        id="shifted_sine", f=_shifted_sine, f_prime=np.cos, lower_bound=1.0, upper_constant=3.0
    ),
    Conductivity(
        id="sat_quadratic",
        f=_sat_quadratic,
        f_prime=_sat_quadratic_prime,
        lower_bound=1.0,
        upper_constant=2.0,
    ),
)

_REGISTRY: Dict[str, Conductivity] = {cond.id: cond for cond in _BUILTIN}


def conductivity_ids() -> Tuple[str, ...]:
    """Return the registered conductivity ids."""
    return tuple(_REGISTRY)


def get_conductivity(cond_id: str) -> Conductivity:
    """Look up a conductivity by id.

    Args:
        cond_id: Registry id.

    Returns:
        The registered conductivity.

    Raises:
        ConfigurationError: If the id is unknown.
    """
    try:
        return _REGISTRY[cond_id]
    except KeyError:
        raise ConfigurationError(
            message=f"unknown conductivity {cond_id!r}",
            key="conductivity",
            details=f"known: {', '.join(sorted(_REGISTRY))}",
        ) from None


def register_conductivity(
    cond_id: str,
    f: Callable[[np.ndarray], np.ndarray],
    lower_bound: float,
    upper_constant: float,
    beta: float = 0.0,
    f_prime: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    overwrite: bool = False,
) -> Conductivity:
    """Register a user conductivity with user-asserted growth constants.

    The entry is flagged ``checked=False`` and hypothesis reports carry the
    flag so that asserted constants are never mistaken for verified ones.

    Args:
        cond_id: Registry id.
        f: Vectorised conductivity.
        lower_bound: Asserted lower constant c.
        upper_constant: Asserted envelope constant C.
        beta: Asserted growth exponent.
        f_prime: Optional derivative.
        overwrite: Allow replacing an existing id (built-ins included).

    Returns:
        The registered conductivity.

    Raises:
        ContractViolationError: If the id exists and ``overwrite`` is False.
    """
    if cond_id in _REGISTRY and not overwrite:
        msg = f"conductivity {cond_id!r} is already registered"
        raise ContractViolationError(msg)
    cond = Conductivity(
        id=cond_id,
        f=f,
        f_prime=f_prime,
        lower_bound=lower_bound,
        upper_constant=upper_constant,
        beta=beta,
        checked=False,
    )
    _REGISTRY[cond_id] = cond
    logger.info("Registered unchecked conductivity %r", cond_id)
    return cond


def unregister_conductivity(cond_id: str) -> None:
    """Remove a user conductivity; built-ins cannot be removed."""
    if cond_id in {cond.id for cond in _BUILTIN}:
        msg = f"built-in conductivity {cond_id!r} cannot be removed"
        raise ContractViolationError(msg)
    _REGISTRY.pop(cond_id, None)


def _f_at_nodes(u: np.ndarray, cond: Conductivity, space: SpectralSpace) -> np.ndarray:
    return cond(space.basis_at_nodes @ np.asarray(u, dtype=np.float64))


def _checked_integral(values: np.ndarray, space: SpectralSpace) -> float:
    integral = space.quad.integrate(values)
    if not integral > DENOMINATOR_THRESHOLD:
        raise DegenerateDenominatorError(integral)
    return integral


def integral_f(u: np.ndarray, cond: Conductivity, space: SpectralSpace) -> float:
    """Approximate the integral of f(u_N) over (-1, 1).

    Args:
        u: Coefficients of u_N.
        cond: Conductivity.
        space: Spectral space; its over-integration rule is used.

    Returns:
        The integral, at least 2c up to quadrature error under the growth bound.

    Raises:
        DegenerateDenominatorError: If the integral is <= 1e-12 or not finite.

    Example:
        >>> integral_f(np.zeros(space.dim), get_conductivity("shifted_sine"), space)
        4.0
    """
    return _checked_integral(_f_at_nodes(u, cond, space), space)


def nonlocal_load(
    u: np.ndarray,
    cond: Conductivity,
    lam: float,
    alpha0: float,
    space: SpectralSpace,
) -> np.ndarray:
    """Assemble g_i = alpha0 * lambda * (f(u_N), phi_i) / (integral of f(u_N))^2.

    Pass ``alpha0=1`` to obtain the load without the time-step scale.

    Args:
        u: Coefficients of u_N.
        cond: Conductivity.
        lam: Parameter lambda.
        alpha0: Scale of the load.
        space: Spectral space.

    Returns:
        The load vector (a right-hand side, not coefficients).

    Raises:
        DegenerateDenominatorError: If the denominator integral collapses.
    """
    if lam == 0.0:
        return np.zeros(space.dim)
    values = _f_at_nodes(u, cond, space)
    integral = _checked_integral(values, space)
    return (alpha0 * lam / integral**2) * load_vector(values, space)


def hypothesis_check(
    cond: Conductivity,
    interval: Tuple[float, float] = (-10.0, 10.0),
    samples: int = 2001,
) -> HypothesisReport:
    """Sample a conductivity against the regularity and growth hypotheses.

    Reports the minimum of f, an empirical Lipschitz constant from adjacent
    samples, and whether c <= f(xi) <= C |xi|^(beta + 1) + C held at every
    sample for the registered constants.

    Args:
        cond: Conductivity.
        interval: Sampled range.
        samples: Number of uniform samples, at least 2.

    Returns:
        The report; failures are flags, not exceptions.

    Raises:
        ContractViolationError: If fewer than 2 samples are requested.
    """
    if samples < 2:
        msg = f"hypothesis sampling needs at least 2 samples, got {samples}"
        raise ContractViolationError(msg)
    lower, upper = interval
    xi = np.linspace(lower, upper, samples)
    values = cond(xi)
    slopes = np.abs(np.diff(values)) / np.diff(xi)
    envelope_top = cond.upper_constant * (np.abs(xi) ** (cond.beta + 1.0) + 1.0)
    tol = 1e-12 * np.maximum(1.0, np.abs(values))
    report = HypothesisReport(
        conductivity=cond.id,
        lower=lower,
        upper=upper,
        samples=samples,
        min_value=float(np.min(values)),
        lipschitz=float(np.max(slopes)),
        positive=bool(np.min(values) > 0.0),
        envelope=bool(
            np.all(values >= cond.lower_bound - tol) and np.all(values <= envelope_top + tol)
        ),
        checked=cond.checked,
    )
    logger.debug("Hypothesis report for %s: %s", cond.id, report)
    return report


def empirical_lipschitz(
    cond: Conductivity,
    lam: float,
    alpha0: float,
    space: SpectralSpace,
    pairs: int = 200,
    seed: int = 0,
    amplitude: float = 1.0,
) -> float:
    """Estimate the Lipschitz constant of the nonlocal load map.

    Coefficient pairs are drawn with amplitudes decaying like 1/(k + 1)^2,
    so their synthesized values stay in a bounded set; the estimate is
    the largest ratio ||g(u1) - g(u2)||_2 / ||u1 - u2||_2.

    Args:
        cond: Conductivity.
        lam: Parameter lambda.
        alpha0: Scale of the load.
        space: Spectral space.
        pairs: Number of random pairs.
        seed: Seed of the generator.
        amplitude: Overall scale of the random coefficients.

    Returns:
        The largest observed ratio.
    """
    rng = np.random.default_rng(seed)
    decay = amplitude / (np.arange(space.dim) + 1.0) ** 2
    ratio = 0.0
    for _ in range(pairs):
        first = rng.uniform(-1.0, 1.0, space.dim) * decay
        second = rng.uniform(-1.0, 1.0, space.dim) * decay
        gap = np.linalg.norm(first - second)
        if gap == 0.0:
            continue
        change = nonlocal_load(first, cond, lam, alpha0, space) - nonlocal_load(
            second, cond, lam, alpha0, space
        )
        ratio = max(ratio, float(np.linalg.norm(change) / gap))
    return ratio
