"""Pydantic models for run outputs, reports and manifests.

This module provides the records produced by the stepper, the hypothesis
checker, the convergence studies and the command-line front end.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import ConfigDict, Field, model_validator

from fracthermistor.models.base import ThermistorModel


class RunRecord(ThermistorModel):
    """Trajectory and per-step diagnostics of one run.

    Entry ``k`` of every per-step list refers to the solve that produced
    step ``k``; entry 0 describes the projected initial datum (zero
    iterations, zero residual).

    Attributes:
        alpha0: Scale Gamma(2 - alpha) * delta^alpha of the run.
        times: t_0..t_k for the steps recorded so far.
        trajectory: Coefficient vectors c^0..c^k.
        picard_iters: Fixed-point iterations per step.
        picard_residuals: Final increment per step.
        l2_norms: ||u^k||_0 per step.
        h1_norms: ||u^k||_1 (alpha0-weighted) per step.
        rhs_audit: Convex and difference forms of the history term per step,
            recorded only when requested.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, allow_inf_nan=True)

    alpha0: float
    times: List[float] = Field(default_factory=list)
    trajectory: List[np.ndarray] = Field(default_factory=list)
    picard_iters: List[int] = Field(default_factory=list)
    picard_residuals: List[float] = Field(default_factory=list)
    l2_norms: List[float] = Field(default_factory=list)
    h1_norms: List[float] = Field(default_factory=list)
    rhs_audit: Optional[List[Tuple[np.ndarray, np.ndarray]]] = None

    @property
    def steps(self) -> int:
        """Number of completed steps (trajectory length minus one)."""
        return len(self.trajectory) - 1

    @property
    def final(self) -> np.ndarray:
        """Coefficients of the last recorded step."""
        return self.trajectory[-1]

    def rows(self) -> List[Dict[str, Any]]:
        """Return one dict per step, in the trajectory CSV column order."""
        return [
            {
                "k": k,
                "t": self.times[k],
                "l2_norm": self.l2_norms[k],
                "h1_norm": self.h1_norms[k],
                "picard_iters": self.picard_iters[k],
                "picard_residual": self.picard_residuals[k],
            }
            for k in range(len(self.trajectory))
        ]


class HypothesisReport(ThermistorModel):
    """Outcome of sampling a conductivity against its hypotheses.

    Attributes:
        conductivity: Conductivity id.
        lower: Lower end of the sampled interval.
        upper: Upper end of the sampled interval.
        samples: Number of samples.
        min_value: Smallest sampled value of f.
        lipschitz: Largest difference quotient between adjacent samples.
        positive: Whether min_value > 0.
        envelope: Whether c <= f <= c|xi|^(beta+1) + c held at every sample.
        checked: False when the conductivity metadata is user-asserted.
    """

    conductivity: str
    lower: float
    upper: float
    samples: int
    min_value: float
    lipschitz: float
    positive: bool
    envelope: bool
    checked: bool = True

    @property
    def passed(self) -> bool:
        """Whether every sampled hypothesis holds."""
        return self.positive and self.envelope and bool(np.isfinite(self.lipschitz))


class ConvergenceStudy(ThermistorModel):
    """Errors at the final time along a step-length or degree axis.

    Attributes:
        axis_name: ``delta`` for temporal studies, ``N`` for spatial ones.
        axis: Axis values, strictly monotone.
        errors_h1: alpha0-weighted H1 errors at T.
        errors_l2: L2 errors at T.
        errors_h1_standard: Unweighted H1 errors at T.
        fitted_order: Least-squares slope of the error curve.
        mode: ``loglog`` or ``semilog``.
        picard_max_iters: Largest Picard count over all runs of the study.
        temporal_floor: Estimated time-discretisation error, spatial studies only.
        norm_weight: Gradient weight shared by every H1 error, when there is one.
    """

    axis_name: str
    axis: List[float]
    errors_h1: List[float]
    errors_l2: List[float]
    errors_h1_standard: List[float]
    fitted_order: float
    mode: str
    picard_max_iters: int = 0
    temporal_floor: Optional[float] = None
    norm_weight: Optional[float] = None

    @model_validator(mode="after")
    def _check_axis(self) -> ConvergenceStudy:
        diffs = np.diff(np.asarray(self.axis, dtype=np.float64))
        if diffs.size and not (np.all(diffs > 0) or np.all(diffs < 0)):
            msg = "study axis must be strictly monotone"
            raise ValueError(msg)
        if any(e <= 0.0 for e in self.errors_h1):
            msg = "study errors must be positive"
            raise ValueError(msg)
        return self

    def rows(self) -> List[Dict[str, float]]:
        """Return one dict per axis value, in the study CSV column order."""
        return [
            {"axis_value": a, "error_h1": e1, "error_l2": e0}
            for a, e1, e0 in zip(self.axis, self.errors_h1, self.errors_l2)
        ]


class CheckResult(ThermistorModel):
    """One line of the ``check`` pass/fail table.

    Attributes:
        name: Short description of the check.
        value: Measured quantity.
        expected: Human-readable acceptance condition.
        passed: Whether the measured value satisfies the condition.
    """

    name: str
    value: float
    expected: str
    passed: bool


class RunManifest(ThermistorModel):
    """Provenance of a command-line run.

    Attributes:
        command: Subcommand that produced the outputs.
        config: Fully resolved configuration.
        tool_version: Package version.
        started_at: ISO-8601 UTC start time.
        finished_at: ISO-8601 UTC end time.
        outputs: Output file name to SHA-256 hex digest.
        seed: Seed of any randomized fixture, if one was used.
        extra: Command-specific parameters (axis, values, jobs).
    """

    command: str
    config: Dict[str, Any]
    tool_version: str
    started_at: str
    finished_at: str
    outputs: Dict[str, str] = Field(default_factory=dict)
    seed: Optional[int] = None
    extra: Dict[str, Any] = Field(default_factory=dict)


class StudyPoint(ThermistorModel):
    """Errors of one run of a convergence study.

    Attributes:
        axis_value: Step length or degree of the run.
        error_h1: alpha0-weighted H1 error at T.
        error_l2: L2 error at T.
        error_h1_standard: Unweighted H1 error at T.
        picard_max_iters: Largest Picard count of the run.
        alpha0: Scale of the run.
        norm_weight: Gradient weight used for error_h1.
    """

    axis_value: float
    error_h1: float
    error_l2: float
    error_h1_standard: float
    picard_max_iters: int
    alpha0: float
    norm_weight: float
