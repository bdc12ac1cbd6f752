"""fractional-thermistor - L1 / Legendre-Galerkin solver for the time-fractional
nonlocal thermistor problem.

The package discretizes

    d^alpha u / dt^alpha - u_xx = lambda f(u) / (int_{-1}^{1} f(u) dx)^2

on (-1, 1) with homogeneous Dirichlet data, using the L1 scheme in time and
a Legendre-Galerkin method in space, and ships the oracles and convergence
studies that verify the expected orders.

Example:
    Running a configuration::

        from fracthermistor import ProblemConfig, run

        config = ProblemConfig(
            alpha=0.5, lam=0.5, T=1.0, K=64, N=24, conductivity="shifted_sine"
        )
        record = run(config)
        print(record.l2_norms[-1])

    Measuring the temporal order against a manufactured solution::

        from fracthermistor.verify import temporal_order_study

        base = ProblemConfig(alpha=0.5, lam=0.0, T=1.0, K=8, N=32)
        study = temporal_order_study(base, "t2_sinpi", [1 / 8, 1 / 16, 1 / 32, 1 / 64])

Attributes:
    __version__: The current version of the package.
    __all__: List of public objects exported by this module.
"""

from __future__ import annotations

from fracthermistor.exceptions import (
    BoundaryViolationError,
    ConfigurationError,
    ContractViolationError,
    DegenerateDenominatorError,
    HypothesisError,
    NonConvergenceError,
    NumericalError,
    SolverError,
    StudyError,
    ThermistorError,
)
from fracthermistor.models import (
    ConvergenceStudy,
    FractionalOrder,
    L1Weights,
    ProblemConfig,
    RunRecord,
    SpectralSpace,
    TimeGrid,
)
from fracthermistor.stepper import Stepper, init_state, run, step

__version__ = "0.1.0"

__all__ = [
    # Stepping
    "Stepper",
    "init_state",
    "step",
    "run",
    # Models
    "FractionalOrder",
    "TimeGrid",
    "L1Weights",
    "SpectralSpace",
    "ProblemConfig",
    "RunRecord",
    "ConvergenceStudy",
    # Exceptions
    "ThermistorError",
    "ConfigurationError",
    "HypothesisError",
    "SolverError",
    "NonConvergenceError",
    "DegenerateDenominatorError",
    "StudyError",
    "ContractViolationError",
    "BoundaryViolationError",
    "NumericalError",
    # Version
    "__version__",
]
