"""Time marching of the fully discrete L1 / Legendre-Galerkin scheme.

Each step solves

    (M + alpha0 S) c^{k+1} = M f^k + g(c^{k+1}) + alpha0 (source(t_{k+1}), phi_i)

where f^k is the history combination of c^0..c^k and g is the nonlocal
load. The implicit nonlocal term is resolved by Picard iteration seeded with
c^k. The step matrix does not change between steps, so it is factorized once
per run.

Example:
    Running a configuration::

        from fracthermistor.models import ProblemConfig
        from fracthermistor.stepper import run

        record = run(ProblemConfig(alpha=0.5, lam=0.5, T=1.0, K=64, N=24,
                                   conductivity="shifted_sine"))
        print(record.l2_norms[-1])
"""

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

import numpy as np

from fracthermistor.exceptions import (
    ContractViolationError,
    DegenerateDenominatorError,
    HypothesisError,
    NonConvergenceError,
)
from fracthermistor.models.config import ProblemConfig
from fracthermistor.models.functions import Profile
from fracthermistor.models.records import RunRecord
from fracthermistor.models.spectral import SpectralSpace
from fracthermistor.nonlocal_source import get_conductivity, nonlocal_load
from fracthermistor.spectral_basis import (
    SystemMatrix,
    check_boundary,
    h1_norm,
    l2_norm,
    load_vector,
    make_space,
    project_h1,
)
from fracthermistor.time_fractional import compute_weights, difference_form, history_combination

logger = logging.getLogger(__name__)


def check_initial_datum(u0: Profile, space: SpectralSpace) -> float:
    """Check the initial datum on the quadrature grid.

    The datum must vanish at x = -1 and x = 1, and be finite with finite
    difference quotients on the quadrature grid of ``space``.

    Args:
        u0: Initial profile.
        space: Spectral space whose nodes are sampled.

    Returns:
        The largest difference quotient, an estimate of the W^{1,inf} seminorm.

    Raises:
        BoundaryViolationError: If u0(+-1) != 0 beyond 1e-10.
        HypothesisError: If the samples or their quotients are not finite.
    """
    check_boundary(u0, what=f"initial datum {u0.name!r}")
    nodes = space.quad.nodes
    values = u0(nodes)
    quotients = np.abs(np.diff(values)) / np.diff(nodes)
    if not (np.all(np.isfinite(values)) and np.all(np.isfinite(quotients))):
        msg = f"initial datum {u0.name!r} is not in W^(1,inf) on the quadrature grid"
        raise HypothesisError(msg)
    return float(np.max(quotients)) if quotients.size else 0.0


class Stepper:
    """State of one run: weights, factorized step matrix and the trajectory.

    Attributes:
        config: The configuration being run.
        weights: L1 weight table.
        space: Spectral space.
        system: Factorized step matrix M + alpha0 S.
        record: Trajectory and diagnostics so far.

    Example:
        Stepping by hand::

            stepper = Stepper(config)
            for k in range(config.K):
                stepper.step(k)
            record = stepper.record
    """

    def __init__(
        self,
        config: ProblemConfig,
        audit: bool = False,
        initial: Optional[np.ndarray] = None,
    ) -> None:
        """Project the initial datum and factorize the step matrix.

        Args:
            config: Run configuration.
            audit: Record both assemblies of the history term at every step.
            initial: Coefficients of u^0; replaces the projection of u0.

        Raises:
            BoundaryViolationError: If u0 does not vanish at the boundary.
            HypothesisError: If u0 fails the initial datum check.
            FactorizationError: If the step matrix cannot be factorized.
        """
        self.config = config
        self.weights = compute_weights(config.order, config.grid)
        self.space = make_space(config.N, config.quadrature_extra)
        self.conductivity = get_conductivity(config.conductivity)
        alpha0 = self.weights.alpha0
        self._nonlocal_scale = alpha0 if config.nonlocal_alpha0_factor else 1.0

        check_initial_datum(config.u0, self.space)
        self.system = SystemMatrix(self.space, alpha0)
        if initial is None:
            initial = project_h1(config.u0, self.space, alpha0)
        elif np.shape(initial) != (self.space.dim,):
            msg = f"initial coefficients must have length {self.space.dim}"
            raise ContractViolationError(msg)
        else:
            initial = np.array(initial, dtype=np.float64)
        self._history: List[np.ndarray] = [initial]
        self.record = RunRecord(
            alpha0=alpha0,
            times=[0.0],
            trajectory=[initial],
            picard_iters=[0],
            picard_residuals=[0.0],
            l2_norms=[l2_norm(initial)],
            h1_norms=[h1_norm(initial, alpha0)],
            rhs_audit=[] if audit else None,
        )
        logger.debug(
            "Initialized run: alpha=%s lambda=%s K=%d N=%d alpha0=%s",
            config.alpha,
            config.lam,
            config.K,
            config.N,
            alpha0,
        )

    @property
    def alpha0(self) -> float:
        """Scale Gamma(2 - alpha) * delta^alpha of the run."""
        return self.weights.alpha0

    def history_term(self, k: int) -> np.ndarray:
        """Return the coefficients of f^k in the configured assembly."""
        if self.config.scheme_form == "difference":
            return difference_form(self._history, self.weights, k)
        return history_combination(self._history, self.weights, k)

    def source_load(self, t: float) -> np.ndarray:
        """Return alpha0 (g(., t), phi_i), zero without a source."""
        source = self.config.source
        if source is None:
            return np.zeros(self.space.dim)
        return self.alpha0 * load_vector(source(self.space.quad.nodes, t), self.space)

    def _nonlocal(self, c: np.ndarray) -> np.ndarray:
        return nonlocal_load(
            c, self.conductivity, self.config.lam, self._nonlocal_scale, self.space
        )

    def _picard(self, k: int, base: np.ndarray) -> Tuple[np.ndarray, int, float]:
        settings = self.config.picard
        current = self._history[k]
        residuals: List[float] = []
        for m in range(1, settings.max_iter + 1):
            update = self.system.solve(base + self._nonlocal(current))
            residual = float(np.max(np.abs(update - current)))
            residuals.append(residual)
            current = update
            logger.debug("Step %d Picard iterate %d: residual %.3e", k, m, residual)
            if residual <= settings.tol:
                return current, m, residual
        raise NonConvergenceError(step=k, residuals=residuals)

    def step(self, k: int) -> np.ndarray:
        """Compute c^{k+1} from c^0..c^k.

        Args:
            k: Index of the last computed step, 0 <= k < K.

        Returns:
            The coefficient vector c^{k+1}.

        Raises:
            ContractViolationError: If the trajectory does not end at step k.
            NonConvergenceError: If the Picard budget is exhausted.
            DegenerateDenominatorError: If the integral of f(u) collapses.
        """
        if len(self._history) != k + 1 or not 0 <= k < self.config.K:
            msg = (
                f"cannot compute step {k + 1}: trajectory holds "
                f"{len(self._history)} steps, K = {self.config.K}"
            )
            raise ContractViolationError(msg)

        history = self.history_term(k)
        if self.record.rhs_audit is not None:
            self.record.rhs_audit.append(
                (
                    history_combination(self._history, self.weights, k),
                    difference_form(self._history, self.weights, k),
                )
            )
        t_next = self.config.grid.time(k + 1)
        base = self.space.mass @ history + self.source_load(t_next)

        if self.config.lam == 0.0:
            update, iters, residual = self.system.solve(base), 1, 0.0
        elif self.config.linearization == "lagged":
            update = self.system.solve(base + self._nonlocal(self._history[k]))
            iters, residual = 1, 0.0
        else:
            update, iters, residual = self._picard(k, base)

        self._history.append(update)
        record = self.record
        record.times.append(t_next)
        record.trajectory.append(update)
        record.picard_iters.append(iters)
        record.picard_residuals.append(residual)
        record.l2_norms.append(l2_norm(update))
        record.h1_norms.append(h1_norm(update, self.alpha0))
        return update

    def run(self) -> RunRecord:
        """March all remaining steps.

        Returns:
            The completed run record.

        Raises:
            NonConvergenceError: With ``partial`` set to the record so far.
            DegenerateDenominatorError: With ``partial`` set likewise.
        """
        for k in range(len(self._history) - 1, self.config.K):
            try:
                self.step(k)
            except (NonConvergenceError, DegenerateDenominatorError) as e:
                e.partial = self.record
                logger.warning("Run aborted at step %d: %s", k, e.message)
                raise
        logger.info(
            "Run finished: K=%d, max Picard iterations %d",
            self.config.K,
            max(self.record.picard_iters),
        )
        return self.record


def init_state(config: ProblemConfig, audit: bool = False) -> Stepper:
    """Project u0 and factorize the step matrix; see :class:`Stepper`."""
    return Stepper(config, audit=audit)


def step(state: Stepper, k: int) -> np.ndarray:
    """Advance ``state`` from step k to k + 1; see :meth:`Stepper.step`."""
    return state.step(k)


def run(config: ProblemConfig, audit: bool = False) -> RunRecord:
    """Run a configuration to the final time.

    Args:
        config: Run configuration.
        audit: Record both assemblies of the history term per step.

    Returns:
        The run record, deterministic given ``config``.

    Raises:
        BoundaryViolationError: If u0 does not vanish at the boundary.
        HypothesisError: If u0 fails the initial datum check.
        NonConvergenceError: If a Picard loop fails; carries the partial record.
        DegenerateDenominatorError: If the denominator collapses.
    """
    return Stepper(config, audit=audit).run()
