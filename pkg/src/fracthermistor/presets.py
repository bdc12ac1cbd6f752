"""Named initial profiles, time factors and manufactured solutions.

Configuration files select functions by name; this module owns the names.
A profile name of the form ``<solution>@<t>`` resolves to the manufactured
solution ``<solution>`` frozen at time ``t``, which is how manufactured runs
record their initial datum.
"""

from __future__ import annotations

from typing import Dict, Tuple

import numpy as np

from fracthermistor.exceptions import ConfigurationError
from fracthermistor.models.functions import ManufacturedSolution, Profile, TimeFactor

PI = np.pi

SINPI = Profile(
    name="sinpi",
    value=lambda x: np.sin(PI * x),
    derivative=lambda x: PI * np.cos(PI * x),
    second_derivative=lambda x: -(PI**2) * np.sin(PI * x),
)

# phi_0 = L_0 - L_2, the first basis function.
PHI0 = Profile(
    name="phi0",
    value=lambda x: 1.5 * (1.0 - x**2),
    derivative=lambda x: -3.0 * x,
    second_derivative=lambda x: np.full_like(x, -3.0),
)

BUMP = Profile(
    name="bump",
    value=lambda x: (1.0 - x**2) ** 2,
    derivative=lambda x: -4.0 * x * (1.0 - x**2),
    second_derivative=lambda x: 12.0 * x**2 - 4.0,
)

# Does not vanish at the boundary; only used to exercise the rejection path.
CONSTANT = Profile(
    name="const",
    value=np.ones_like,
    derivative=np.zeros_like,
    second_derivative=np.zeros_like,
)

# Finite regularity: (1 - x^2) |x|^(5/2), in H^m only for m < 3.
ROUGH = Profile(
    name="rough",
    value=lambda x: (1.0 - x**2) * np.abs(x) ** 2.5,
    derivative=lambda x: np.sign(x) * np.abs(x) ** 1.5 * (2.5 - 4.5 * x**2),
)

PROFILES: Dict[str, Profile] = {p.name: p for p in (SINPI, PHI0, BUMP, ROUGH)}

TIME_FACTORS: Dict[str, TimeFactor] = {
    w.name: w
    for w in (
        TimeFactor(name="one", coefficients=(1.0,)),
        TimeFactor(name="1pt", coefficients=(1.0, 1.0)),
        TimeFactor(name="t2", coefficients=(0.0, 0.0, 1.0)),
        TimeFactor(name="t3", coefficients=(0.0, 0.0, 0.0, 1.0)),
        TimeFactor(name="1pt2", coefficients=(1.0, 0.0, 1.0)),
    )
}

MANUFACTURED: Dict[str, ManufacturedSolution] = {
    m.name: m
    for m in (
        ManufacturedSolution(name="one_sinpi", time=TIME_FACTORS["one"], shape=SINPI),
        ManufacturedSolution(name="1pt_sinpi", time=TIME_FACTORS["1pt"], shape=SINPI),
        ManufacturedSolution(name="t2_sinpi", time=TIME_FACTORS["t2"], shape=SINPI),
        ManufacturedSolution(name="t3_sinpi", time=TIME_FACTORS["t3"], shape=SINPI),
        ManufacturedSolution(name="1pt2_sinpi", time=TIME_FACTORS["1pt2"], shape=SINPI),
        ManufacturedSolution(name="1pt2_bump", time=TIME_FACTORS["1pt2"], shape=BUMP),
        ManufacturedSolution(name="t2_const", time=TIME_FACTORS["t2"], shape=CONSTANT),
    )
}


def _split_snapshot(name: str) -> Tuple[str, float]:
    solution, _, time = name.partition("@")
    try:
        return solution, float(time)
    except ValueError:
        raise ConfigurationError(
            message=f"cannot parse snapshot time in {name!r}", key="u0"
        ) from None


def get_profile(name: str) -> Profile:
    """Resolve a profile name.

    Args:
        name: A preset name or ``<manufactured solution>@<time>``.

    Returns:
        The profile.

    Raises:
        ConfigurationError: If the name is unknown.
    """
    if "@" in name:
        solution, t = _split_snapshot(name)
        return get_manufactured(solution).at(t)
    try:
        return PROFILES[name]
    except KeyError:
        raise ConfigurationError(
            message=f"unknown initial profile {name!r}",
            key="u0",
            details=f"known: {', '.join(sorted(PROFILES))}",
        ) from None


def get_manufactured(name: str) -> ManufacturedSolution:
    """Resolve a manufactured solution name.

    Raises:
        ConfigurationError: If the name is unknown.
    """
    try:
        return MANUFACTURED[name]
    except KeyError:
        raise ConfigurationError(
            message=f"unknown manufactured solution {name!r}",
            key="source",
            details=f"known: {', '.join(sorted(MANUFACTURED))}",
        ) from None
