"""Independent oracles and convergence studies.

The checks in this module share no time-stepping code with
:mod:`fracthermistor.stepper`, so they can catch its mistakes:

- a quadrature oracle for the Caputo derivative of closed-form functions;
- manufactured sources that make a chosen w(t) phi(x) the exact solution;
- temporal and spatial convergence studies with least-squares order fits;
- a backward-Euler solver for the integer-order limit.

Study points are independent runs; :func:`run_studies_parallel` fans them
out over processes and returns them in axis order.

Example:
    Measuring the temporal order::

        from fracthermistor.models import ProblemConfig
        from fracthermistor.verify import temporal_order_study

        base = ProblemConfig(alpha=0.5, lam=0.0, T=1.0, K=8, N=32)
        study = temporal_order_study(base, "t2_sinpi", [1/8, 1/16, 1/32, 1/64])
        print(study.fitted_order)
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import lu_factor, lu_solve
from scipy.special import gamma

from fracthermistor.exceptions import (
    ConfigurationError,
    ContractViolationError,
    NonConvergenceError,
    OracleError,
    StudyError,
    ThermistorError,
)
from fracthermistor.models.config import ProblemConfig
from fracthermistor.models.functions import ManufacturedSolution, SourceTerm
from fracthermistor.models.records import CheckResult, ConvergenceStudy, RunRecord, StudyPoint
from fracthermistor.models.time import TimeGrid
from fracthermistor.nonlocal_source import get_conductivity, hypothesis_check, nonlocal_load
from fracthermistor.presets import get_manufactured
from fracthermistor.spectral_basis import (
    assemble_mass,
    assemble_stiffness,
    basis_derivatives,
    basis_values,
    brute_force_mass,
    brute_force_stiffness,
    check_boundary,
    error_norms,
    h1_norm,
    l2_norm,
    lgl_rule,
    load_vector,
    make_space,
    project_h1,
)
from fracthermistor.stepper import Stepper, run
from fracthermistor.time_fractional import compute_weights, l1_caputo_apply

logger = logging.getLogger(__name__)

Function = Callable[[np.ndarray], np.ndarray]
Solution = Union[ManufacturedSolution, str]

#: Gauss-Legendre sizes tried by the Caputo oracle, doubling from 16.
ORACLE_LADDER = tuple(16 * 2**i for i in range(9))

#: Points of the rule measuring the denominator of manufactured sources.
FINE_POINTS = 96

#: Step counts of the temporal floor estimate in spatial studies.
FLOOR_REFINEMENT = 2


# Caputo oracle


def caputo_oracle(
    derivative: Function,
    alpha: float,
    t: float,
    rtol: float = 1e-13,
) -> float:
    """Evaluate the Caputo derivative of u at t from u'.

    The substitution s = t (1 - tau^(1 / (1 - alpha))) turns

        1 / Gamma(1 - alpha) * int_0^t u'(s) (t - s)^(-alpha) ds

    into t^(1 - alpha) / Gamma(2 - alpha) * int_0^1 u'(s(tau)) dtau, whose
    integrand has no singularity. The remaining integral is refined with
    Gauss-Legendre rules of doubling size until two successive values agree
    to ``rtol``.

    Args:
        derivative: u', vectorised.
        alpha: Order in (0, 1).
        t: Evaluation time, positive.
        rtol: Relative agreement of successive refinements.

    Returns:
        The Caputo derivative at t.

    Raises:
        ContractViolationError: If t <= 0 or alpha is outside (0, 1).
        OracleError: If the refinements stop agreeing before the ladder ends.

    Example:
        >>> round(caputo_oracle(lambda s: 2 * s, 0.5, 1.0), 10)
        1.5045055561
    """
    if not t > 0.0:
        msg = f"oracle evaluation time must be positive, got {t}"
        raise ContractViolationError(msg)
    if not 0.0 < alpha < 1.0:
        msg = f"alpha must lie in (0, 1), got {alpha}"
        raise ContractViolationError(msg)
    exponent = 1.0 / (1.0 - alpha)
    scale = t ** (1.0 - alpha) / float(gamma(2.0 - alpha))

    def integral(points: int) -> float:
        nodes, weights = leggauss(points)
        tau = 0.5 * (nodes + 1.0)
        s = t * (1.0 - tau**exponent)
        values = np.broadcast_to(np.asarray(derivative(s), dtype=np.float64), s.shape)
        return 0.5 * float(weights @ values)

    previous = integral(ORACLE_LADDER[0])
    for points in ORACLE_LADDER[1:]:
        current = integral(points)
        if abs(current - previous) <= rtol * abs(current):
            return scale * current
        previous = current
    raise OracleError(
        message="Caputo oracle refinement stagnated",
        details=f"alpha={alpha}, t={t}, last change {abs(current - previous):.3e}",
    )


def caputo_truncation_study(
    func: Function,
    derivative: Function,
    alpha: float,
    deltas: Sequence[float],
    T: float = 1.0,  # noqa: N803
) -> ConvergenceStudy:
    """Measure the L1 truncation error of a scalar function at T.

    Args:
        func: u(t), vectorised.
        derivative: u'(t) for the oracle.
        alpha: Order in (0, 1).
        deltas: Step lengths dividing T.
        T: Evaluation time.

    Returns:
        A study whose error columns all hold |L1 u(T) - oracle|.
    """
    exact = caputo_oracle(derivative, alpha, T)
    errors = []
    for delta in deltas:
        grid = TimeGrid(T=T, K=max(1, round(T / delta)))
        approx = l1_caputo_apply(func(grid.times()), compute_weights(alpha, grid))
        errors.append(abs(approx - exact))
    logger.debug("Truncation errors for alpha=%s: %s", alpha, errors)
    return ConvergenceStudy(
        axis_name="delta",
        axis=list(deltas),
        errors_h1=errors,
        errors_l2=errors,
        errors_h1_standard=errors,
        fitted_order=fit_order(deltas, errors),
        mode="loglog",
    )


# Order fitting


def fit_order(
    xs: Sequence[float],
    errors: Sequence[float],
    mode: Literal["loglog", "semilog"] = "loglog",
) -> float:
    """Least-squares slope of log(error) against log(x) or x.

    Args:
        xs: Axis values.
        errors: Positive errors.
        mode: ``loglog`` for algebraic rates, ``semilog`` for exponential ones.

    Returns:
        The fitted slope.

    Raises:
        ContractViolationError: With fewer than 3 points, non-positive
            errors, or an axis without spread.

    Example:
        >>> round(fit_order([0.1, 0.05, 0.025], [0.01, 0.0025, 0.000625]), 6)
        2.0
    """
    x = np.asarray(xs, dtype=np.float64)
    e = np.asarray(errors, dtype=np.float64)
    if x.size < 3 or x.size != e.size:
        msg = f"order fit needs at least 3 paired points, got {x.size} and {e.size}"
        raise ContractViolationError(msg)
    if np.any(e <= 0.0):
        msg = "order fit needs positive errors"
        raise ContractViolationError(msg)
    abscissa = np.log(x) if mode == "loglog" else x
    if np.ptp(abscissa) == 0.0:
        msg = "order fit axis has zero variance"
        raise ContractViolationError(msg)
    slope, _ = np.polyfit(abscissa, np.log(e), 1)
    return float(slope)


# Manufactured solutions


def _resolve(solution: Solution) -> ManufacturedSolution:
    return get_manufactured(solution) if isinstance(solution, str) else solution


def manufactured_source(solution: Solution, config: ProblemConfig) -> SourceTerm:
    """Build g so that ``solution`` solves the problem exactly.

    g(x, t) = d^alpha w(t) phi(x) - w(t) phi''(x) - lambda f(u) / (int f(u))^2,
    with the Caputo derivative of w in closed form and the denominator
    integral on a fine Gauss-Lobatto rule.

    Args:
        solution: Manufactured solution or its preset name.
        config: Supplies alpha, lambda and the conductivity.

    Returns:
        The source term, named after the solution.

    Raises:
        BoundaryViolationError: If phi does not vanish at the boundary.
        ContractViolationError: If phi has no analytic second derivative.
    """
    solution = _resolve(solution)
    shape = solution.shape
    check_boundary(shape, what=f"manufactured profile {shape.name!r}")
    curvature = shape.second_derivative
    if curvature is None:
        msg = f"manufactured profile {shape.name!r} needs an analytic second derivative"
        raise ContractViolationError(msg)

    alpha, lam = config.alpha, config.lam
    cond = get_conductivity(config.conductivity)
    fine = lgl_rule(FINE_POINTS)
    fine_shape = shape(fine.nodes)

    def source(x: np.ndarray, t: float) -> np.ndarray:
        w = solution.time(t)
        value = solution.time.caputo(t, alpha) * shape(x) - w * curvature(x)
        if lam:
            integral = fine.integrate(cond(w * fine_shape))
            value = value - lam * cond(w * shape(x)) / integral**2
        return value

    return SourceTerm(name=solution.name, func=source)


def manufactured_config(base: ProblemConfig, solution: Solution) -> ProblemConfig:
    """Attach a manufactured source and its initial datum to a configuration.

    Args:
        base: Configuration supplying every other parameter.
        solution: Manufactured solution or its preset name.

    Returns:
        A copy of ``base`` with ``source`` and ``u0`` replaced.

    Raises:
        ConfigurationError: If lambda > 0 without the alpha0 factor on the
            nonlocal term, a scheme the source is not consistent with.
        BoundaryViolationError: If the solution does not vanish at the boundary.
    """
    solution = _resolve(solution)
    if base.lam > 0.0 and not base.nonlocal_alpha0_factor:
        raise ConfigurationError(
            message="manufactured sources require the alpha0 factor on the nonlocal term",
            key="nonlocal_alpha0_factor",
        )
    source = manufactured_source(solution, base)
    return base.model_copy(update={"source": source, "u0": solution.at(0.0)})


def manufactured_residual(
    solution: Solution,
    config: ProblemConfig,
    t: float,
    N: int = 16,  # noqa: N803
    points: int = FINE_POINTS,
) -> float:
    """Residual of the exact solution in the weak form, tested on phi_0..phi_{N-2}.

    Returns:
        max_i |(d^alpha u, phi_i) + (u', phi_i') - (lambda f(u) / (int f(u))^2 + g, phi_i)|.
    """
    solution = _resolve(solution)
    source = manufactured_source(solution, config)
    cond = get_conductivity(config.conductivity)
    rule = lgl_rule(points)
    x = rule.nodes
    shape = solution.shape
    w = solution.time(t)
    u = w * shape(x)
    if shape.derivative is None:
        msg = f"manufactured profile {shape.name!r} needs an analytic derivative"
        raise ContractViolationError(msg)
    slope = w * shape.derivative(x)
    nonlocal_term = config.lam * cond(u) / rule.integrate(cond(u)) ** 2
    strong = solution.time.caputo(t, config.alpha) * shape(x) - nonlocal_term - source(x, t)
    phi, dphi = basis_values(N, x), basis_derivatives(N, x)
    residual = phi.T @ (rule.weights * strong) + dphi.T @ (rule.weights * slope)
    return float(np.max(np.abs(residual)))


# Studies


def _point_config(
    payload: Dict[str, Any], solution: str, axis_name: str, value: float
) -> ProblemConfig:
    update: Dict[str, Any] = {}
    if axis_name == "delta":
        update["K"] = max(1, round(payload["T"] / value))
    else:
        update["N"] = int(value)
    base = ProblemConfig.model_validate({**payload, **update, "source": "none"})
    return manufactured_config(base, solution)


def study_point(
    payload: Dict[str, Any],
    solution: str,
    axis_name: str,
    value: float,
    norm_weight: Optional[float] = None,
) -> StudyPoint:
    """Run one study point and measure its errors at T.

    Takes the configuration as its serialized mapping so that the call can
    run in a worker process.

    Args:
        payload: ``ProblemConfig.model_dump()`` of the base configuration.
        solution: Manufactured solution name.
        axis_name: ``delta`` or ``N``.
        value: Step length or degree of this point.
        norm_weight: Gradient weight of the H1 error; the alpha0 of the
            run when omitted.

    Returns:
        The measured errors.
    """
    config = _point_config(payload, solution, axis_name, value)
    record = run(config)
    weight = record.alpha0 if norm_weight is None else norm_weight
    exact = _resolve(solution).at(config.T)
    errors = error_norms(record.final, exact.value, exact.derivative, weight)
    logger.debug("Study point %s=%s: errors %s", axis_name, value, errors)
    return StudyPoint(
        axis_value=value,
        error_h1=errors[0],
        error_l2=errors[1],
        error_h1_standard=errors[2],
        picard_max_iters=max(record.picard_iters),
        alpha0=record.alpha0,
        norm_weight=weight,
    )


def run_studies_parallel(
    base: ProblemConfig,
    solution: str,
    axis_name: Literal["delta", "N"],
    values: Sequence[float],
    jobs: int = 1,
    norm_weight: Optional[float] = None,
) -> List[StudyPoint]:
    """Run study points, in worker processes when ``jobs > 1``.

    Args:
        base: Base configuration; its source and u0 are replaced per point.
        solution: Manufactured solution name.
        axis_name: ``delta`` or ``N``.
        values: Axis values.
        jobs: Number of worker processes.
        norm_weight: Common gradient weight of the H1 errors, if any.

    Returns:
        One point per value, in the order of ``values``.

    Raises:
        StudyError: Wrapping the error of the first failing point.
    """
    payload = base.model_dump(exclude={"source", "u0"})
    ordered = list(values)
    task = partial(study_point, payload, solution, axis_name, norm_weight=norm_weight)
    if jobs > 1 and len(ordered) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = {value: executor.submit(task, value) for value in ordered}
            results = {value: _collect(value, future.result) for value, future in futures.items()}
    else:
        results = {value: _collect(value, partial(task, value)) for value in ordered}
    return [results[value] for value in ordered]


def _check_study_solution(solution: str) -> None:
    shape = _resolve(solution).shape
    check_boundary(shape, what=f"manufactured profile {shape.name!r}")


def _collect(value: float, produce: Callable[[], StudyPoint]) -> StudyPoint:
    try:
        return produce()
    except ThermistorError as e:
        raise StudyError(value, e) from e


def temporal_order_study(
    base: ProblemConfig,
    solution: str,
    deltas: Sequence[float],
    jobs: int = 1,
) -> ConvergenceStudy:
    """Errors at T against step length, with the fitted log-log order.

    The alpha0 weight of the H1 norm shrinks with the step, which would bend
    the fitted slope; every point is therefore measured with the weight of
    the finest step of the study.

    Args:
        base: Base configuration; N should make the spatial error negligible.
        solution: Manufactured solution name.
        deltas: Step lengths, at least 3, strictly monotone.
        jobs: Worker processes.

    Returns:
        The study; ``fitted_order`` is the slope in the weighted H1 norm.

    Raises:
        BoundaryViolationError: If the solution does not vanish at +-1.
    """
    _check_study_solution(solution)
    finest = TimeGrid(T=base.T, K=max(1, round(base.T / min(deltas))))
    weight = compute_weights(base.alpha, finest).alpha0
    points = run_studies_parallel(base, solution, "delta", deltas, jobs, norm_weight=weight)
    study = _assemble("delta", points, "loglog")
    logger.info("Temporal study alpha=%s: order %.3f", base.alpha, study.fitted_order)
    return study


def spatial_study(
    base: ProblemConfig,
    solution: str,
    degrees: Sequence[int],
    jobs: int = 1,
) -> ConvergenceStudy:
    """Errors at T against degree, with the fitted semilog slope.

    The temporal error floor is estimated from the largest degree by
    comparing runs with K and 2K steps, scaled by the L1 rate 2 - alpha.

    Args:
        base: Base configuration with a small fixed step.
        solution: Manufactured solution name.
        degrees: Spectral degrees, at least 3, strictly increasing.
        jobs: Worker processes.

    Returns:
        The study, with ``temporal_floor`` filled in.

    Raises:
        BoundaryViolationError: If the solution does not vanish at +-1.
    """
    _check_study_solution(solution)
    points = run_studies_parallel(base, solution, "N", [float(n) for n in degrees], jobs)
    study = _assemble("N", points, "semilog")
    floor = _temporal_floor(base.model_copy(update={"N": int(max(degrees))}), solution)
    logger.info("Spatial study: slope %.3f, temporal floor %.3e", study.fitted_order, floor)
    return study.model_copy(update={"temporal_floor": floor})


def _temporal_floor(base: ProblemConfig, solution: str) -> float:
    coarse = run(manufactured_config(base, solution))
    fine = run(manufactured_config(base.model_copy(update={"K": FLOOR_REFINEMENT * base.K}), solution))
    gap = h1_norm(coarse.final - fine.final, coarse.alpha0)
    return gap / (1.0 - FLOOR_REFINEMENT ** (base.alpha - 2.0))


def _assemble(axis_name: str, points: List[StudyPoint], mode: Literal["loglog", "semilog"]) -> ConvergenceStudy:
    axis = [p.axis_value for p in points]
    errors_h1 = [p.error_h1 for p in points]
    weights = {p.norm_weight for p in points}
    return ConvergenceStudy(
        axis_name=axis_name,
        axis=axis,
        errors_h1=errors_h1,
        errors_l2=[p.error_l2 for p in points],
        errors_h1_standard=[p.error_h1_standard for p in points],
        fitted_order=fit_order(axis, errors_h1, mode),
        mode=mode,
        picard_max_iters=max(p.picard_max_iters for p in points),
        norm_weight=weights.pop() if len(weights) == 1 else None,
    )


def lagged_vs_picard(base: ProblemConfig, deltas: Sequence[float]) -> ConvergenceStudy:
    """Distance between Picard and lagged runs at T against step length.

    Args:
        base: Configuration with lambda > 0.
        deltas: Step lengths, at least 3.

    Returns:
        A study whose errors are the weighted H1, L2 and standard H1
        distances of the two final states; the lagged variant is first
        order, so the fitted order should be close to 1.
    """
    h1, l2, standard = [], [], []
    for delta in deltas:
        config = base.model_copy(update={"K": max(1, round(base.T / delta))})
        implicit = run(config.model_copy(update={"linearization": "picard"}))
        lagged = run(config.model_copy(update={"linearization": "lagged"}))
        gap = implicit.final - lagged.final
        h1.append(h1_norm(gap, implicit.alpha0))
        l2.append(l2_norm(gap))
        standard.append(h1_norm(gap, 1.0))
    return ConvergenceStudy(
        axis_name="delta",
        axis=list(deltas),
        errors_h1=h1,
        errors_l2=l2,
        errors_h1_standard=standard,
        fitted_order=fit_order(deltas, h1),
        mode="loglog",
    )


def stability_sweep(
    alpha: float,
    K: int,  # noqa: N803
    N: int,  # noqa: N803
    samples: int = 100,
    seed: int = 0,
    T: float = 1.0,  # noqa: N803
) -> float:
    """Largest growth max_k ||u^k||_0 - ||u^0||_0 over random initial data.

    Runs lambda = 0 without source from ``samples`` random coefficient
    vectors. The scheme is non-expansive, so the result should not exceed
    round-off.

    Args:
        alpha: Order in (0, 1).
        K: Steps per run.
        N: Spectral degree.
        samples: Number of random initial vectors.
        seed: Seed of the generator, recorded by callers.
        T: Final time.

    Returns:
        The largest observed growth, usually negative.
    """
    config = ProblemConfig(alpha=alpha, lam=0.0, T=T, K=K, N=N)
    rng = np.random.default_rng(seed)
    growth = -np.inf
    for _ in range(samples):
        record = Stepper(config, initial=rng.standard_normal(N - 1)).run()
        growth = max(growth, max(record.l2_norms) - record.l2_norms[0])
    logger.info("Stability sweep alpha=%s: largest growth %.3e", alpha, growth)
    return float(growth)


# Integer-order reference


def backward_euler_reference(config: ProblemConfig) -> RunRecord:
    """Solve the integer-order problem with implicit Euler.

    Shares the spectral space and the nonlocal load with the fractional
    stepper, but nothing of its time marching: the step matrix M + delta S
    is LU-factorized with a dense solver and the history term is just u^k.
    ``config.alpha`` is ignored; ``scheme_form`` and ``linearization`` too.

    Args:
        config: Configuration; lambda, K, N, u0 and source are used.

    Returns:
        A run record whose ``alpha0`` is delta.

    Raises:
        NonConvergenceError: If a Picard loop exhausts its budget.
        DegenerateDenominatorError: If the denominator collapses.
    """
    grid = config.grid
    delta = grid.delta
    space = make_space(config.N, config.quadrature_extra)
    cond = get_conductivity(config.conductivity)
    factor = lu_factor(space.mass + delta * space.stiffness)
    nodes = space.quad.nodes
    current = project_h1(config.u0, space, delta)
    record = RunRecord(
        alpha0=delta,
        times=[0.0],
        trajectory=[current],
        picard_iters=[0],
        picard_residuals=[0.0],
        l2_norms=[l2_norm(current)],
        h1_norms=[h1_norm(current, delta)],
    )
    settings = config.picard
    for k in range(grid.K):
        t_next = grid.time(k + 1)
        rhs = space.mass @ current
        if config.source is not None:
            rhs = rhs + delta * load_vector(config.source(nodes, t_next), space)
        iterate = current
        residuals: List[float] = []
        while True:
            load = nonlocal_load(iterate, cond, config.lam, delta, space)
            update = lu_solve(factor, rhs + load)
            residuals.append(float(np.max(np.abs(update - iterate))))
            iterate = update
            if config.lam == 0.0 or residuals[-1] <= settings.tol:
                break
            if len(residuals) >= settings.max_iter:
                raise NonConvergenceError(step=k, residuals=residuals)
        current = iterate
        record.times.append(t_next)
        record.trajectory.append(current)
        record.picard_iters.append(len(residuals))
        record.picard_residuals.append(0.0 if config.lam == 0.0 else residuals[-1])
        record.l2_norms.append(l2_norm(current))
        record.h1_norms.append(h1_norm(current, delta))
    return record


def relative_l2_gap(first: RunRecord, second: RunRecord) -> float:
    """Return ||u_1(T) - u_2(T)||_0 / ||u_2(T)||_0."""
    return l2_norm(first.final - second.final) / l2_norm(second.final)


# Check suites


#: Step lengths of the truncation-order checks, 2^-3 .. 2^-7.
TRUNCATION_DELTAS = tuple(2.0**-p for p in range(3, 8))

#: Accepted distance between fitted and theoretical orders.
ORDER_TOLERANCE = 0.1


def check_caputo(alpha: float = 0.5) -> List[CheckResult]:
    """Truncation order on t^3 and e^t, and exactness on linear samples.

    Args:
        alpha: Order in (0, 1).

    Returns:
        One result per check.
    """
    target = 2.0 - alpha
    results = []
    cases: Tuple[Tuple[str, Function, Function], ...] = (
        ("t^3", lambda t: t**3, lambda t: 3.0 * t**2),
        ("exp(t)", np.exp, np.exp),
    )
    for label, func, derivative in cases:
        study = caputo_truncation_study(func, derivative, alpha, TRUNCATION_DELTAS)
        results.append(
            CheckResult(
                name=f"L1 truncation order, u = {label}, alpha = {alpha}",
                value=study.fitted_order,
                expected=f"{target:.2f} +- {ORDER_TOLERANCE}",
                passed=abs(study.fitted_order - target) <= ORDER_TOLERANCE,
            )
        )
    grid = TimeGrid(T=1.0, K=16)
    weights = compute_weights(alpha, grid)
    exact = 1.0 / float(gamma(2.0 - alpha))
    gap = abs(l1_caputo_apply(2.0 + grid.times(), weights) - exact) / exact
    results.append(
        CheckResult(
            name=f"L1 exactness on u = 2 + t, alpha = {alpha}",
            value=gap,
            expected="< 1e-12 relative",
            passed=gap < 1e-12,
        )
    )
    return results


def check_hypotheses(conductivities: Sequence[str]) -> List[CheckResult]:
    """Sample each conductivity against its regularity and growth hypotheses.

    Returns:
        One result per conductivity; the value is the sampled minimum of f.
    """
    results = []
    for cond_id in conductivities:
        report = hypothesis_check(get_conductivity(cond_id))
        suffix = "" if report.checked else " (unchecked metadata)"
        results.append(
            CheckResult(
                name=f"hypotheses for {cond_id}{suffix}",
                value=report.min_value,
                expected="positive, Lipschitz, within envelope",
                passed=report.passed,
            )
        )
    return results


def check_matrices(N: int = 8) -> List[CheckResult]:  # noqa: N803
    """Compare closed-form mass and stiffness with quadrature assembly.

    Returns:
        One result per matrix; the value is the largest entrywise difference.
    """
    results = []
    pairs = (
        ("mass", assemble_mass(N), brute_force_mass(N)),
        ("stiffness", assemble_stiffness(N), brute_force_stiffness(N)),
    )
    for label, closed, brute in pairs:
        gap = float(np.max(np.abs(closed - brute)))
        results.append(
            CheckResult(
                name=f"closed-form {label} matrix, N = {N}",
                value=gap,
                expected="< 1e-12",
                passed=gap < 1e-12,
            )
        )
    return results
