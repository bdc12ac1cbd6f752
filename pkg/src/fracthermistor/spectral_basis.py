"""Legendre-Galerkin discretization of H1_0(-1, 1).

The trial and test space P0_N = H1_0 ∩ P_N is spanned by the compact
combinations phi_k = L_k - L_{k+2}, k = 0..N-2, which vanish at x = -1 and
x = 1. In this basis

    M_kk = 2/(2k+1) + 2/(2k+5),  M_k,k+2 = M_k+2,k = -2/(2k+5),
    S_kk = 4k + 6,

so the step matrix M + alpha0 S is symmetric positive definite with only
the main and second off-diagonals populated. It is factorized once with a
banded Cholesky decomposition.

Inner products involving nonlinear functions of u use a Gauss-Lobatto rule
with N + 16 points by default; continuous-vs-discrete errors use a
reference rule with 4N points.

Example:
    Projecting a smooth function::

        space = make_space(24)
        c = project_h1(lambda x: np.sin(np.pi * x), space, alpha0=0.25,
                       derivative=lambda x: np.pi * np.cos(np.pi * x))
        values = synthesize(c, np.linspace(-1, 1, 5))
"""

from __future__ import annotations

import logging
from functools import lru_cache, partial
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import legendre
from scipy.linalg import LinAlgError, cho_solve_banded, cholesky_banded
from scipy.optimize import brentq

from fracthermistor.exceptions import (
    BoundaryViolationError,
    ContractViolationError,
    FactorizationError,
    QuadratureError,
)
from fracthermistor.models.base import frozen_array
from fracthermistor.models.functions import Profile
from fracthermistor.models.spectral import QuadratureRule, SpectralSpace

logger = logging.getLogger(__name__)

#: Oversampling of the quadrature used for nonlinear inner products.
DEFAULT_QUADRATURE_EXTRA = 16

#: Points per degree of the reference rule used to measure errors.
REFERENCE_POINTS_PER_DEGREE = 4

#: Largest |psi(+-1)| accepted by the projection.
BOUNDARY_TOLERANCE = 1e-10

#: Step of the central difference used when psi' is not supplied.
DIFFERENCE_STEP = 1e-6

Function = Callable[[np.ndarray], np.ndarray]


# Legendre polynomials


def legendre_eval(k: int, x: float) -> float:
    """Evaluate L_k(x) by the three-term recurrence.

    (k + 1) L_{k+1} = (2k + 1) x L_k - k L_{k-1}.

    Args:
        k: Degree, k >= 0.
        x: Point in [-1, 1].

    Returns:
        L_k(x).

    Example:
        >>> legendre_eval(2, 0.5)
        -0.125
    """
    if k == 0:
        return 1.0
    previous, current = 1.0, x
    for m in range(1, k):
        previous, current = current, ((2 * m + 1) * x * current - m * previous) / (m + 1)
    return current


def legendre_derivative_eval(k: int, x: float) -> float:
    """Evaluate L_k'(x) via L'_{m+1} = L'_{m-1} + (2m + 1) L_m.

    Args:
        k: Degree, k >= 0.
        x: Point in [-1, 1].

    Returns:
        L_k'(x).
    """
    if k == 0:
        return 0.0
    value_prev, value = 1.0, x
    deriv_prev, deriv = 0.0, 1.0
    for m in range(1, k):
        next_deriv = deriv_prev + (2 * m + 1) * value
        value_prev, value = value, ((2 * m + 1) * x * value - m * value_prev) / (m + 1)
        deriv_prev, deriv = deriv, next_deriv
    return deriv


def legendre_table(n: int, x: Union[np.ndarray, Sequence[float]]) -> Tuple[np.ndarray, np.ndarray]:
    """Evaluate L_0..L_n and their derivatives at every point.

    Args:
        n: Highest degree.
        x: Evaluation points.

    Returns:
        Two arrays of shape (n + 1, len(x)): values and first derivatives.
    """
    points = np.asarray(x, dtype=np.float64)
    values = np.zeros((n + 1, points.size))
    derivs = np.zeros((n + 1, points.size))
    values[0] = 1.0
    if n >= 1:
        values[1] = points
        derivs[1] = 1.0
    for m in range(1, n):
        values[m + 1] = ((2 * m + 1) * points * values[m] - m * values[m - 1]) / (m + 1)
        derivs[m + 1] = derivs[m - 1] + (2 * m + 1) * values[m]
    return values, derivs


# Quadrature


@lru_cache(maxsize=None)
def lgl_rule(Q: int) -> QuadratureRule:  # noqa: N803
    """Build the Legendre-Gauss-Lobatto rule with Q points.

    The nodes are -1, 1 and the roots of L'_{Q-1}; each interior root is
    bracketed between consecutive Gauss points (roots of L_{Q-1}) and
    located with Brent's method. The weights are
    2 / (Q (Q - 1) L_{Q-1}(x_i)^2). The rule is exact for polynomials of
    degree up to 2Q - 3.

    Args:
        Q: Number of points, Q >= 2.

    Returns:
        The cached quadrature rule.

    Raises:
        ContractViolationError: If Q < 2.
        QuadratureError: If a root fails to converge.

    Example:
        >>> rule = lgl_rule(3)
        >>> rule.nodes, rule.weights
        (array([-1.,  0.,  1.]), array([0.33333333, 1.33333333, 0.33333333]))
    """
    if Q < 2:
        msg = f"a Gauss-Lobatto rule needs at least 2 points, got {Q}"
        raise ContractViolationError(msg)
    n = Q - 1
    interior = []
    if n >= 2:
        gauss, _ = legendre.leggauss(n)
        target = partial(_derivative_at, n)
        for lower, upper in zip(gauss[:-1], gauss[1:]):
            root, info = brentq(
                target,
                lower,
                upper,
                xtol=1e-15,
                rtol=4.0 * np.finfo(np.float64).eps,
                maxiter=200,
                full_output=True,
                disp=False,
            )
            if not info.converged:
                msg = f"Gauss-Lobatto root in [{lower}, {upper}] did not converge for Q = {Q}"
                raise QuadratureError(msg, details=info.flag)
            interior.append(root)
    inner = np.asarray(interior, dtype=np.float64)
    if inner.size:
        # One Newton step on L'_n, with L''_n from the Legendre equation.
        values, derivs = legendre_table(n, inner)
        second = (2.0 * inner * derivs[n] - n * (n + 1) * values[n]) / (1.0 - inner**2)
        inner = inner - derivs[n] / second
    nodes = np.concatenate(([-1.0], inner, [1.0]))
    values, _ = legendre_table(n, nodes)
    weights = 2.0 / (Q * n * values[n] ** 2)
    logger.debug("Built Gauss-Lobatto rule with %d points", Q)
    return QuadratureRule(nodes=frozen_array(nodes), weights=frozen_array(weights))


def _derivative_at(n: int, x: float) -> float:
    return legendre_derivative_eval(n, x)


def composite_lgl_rule(points: int, breakpoints: Sequence[float] = (-1.0, 0.0, 1.0)) -> QuadratureRule:
    """Build a composite Gauss-Lobatto rule over the panels between breakpoints.

    Useful for functions with a known kink inside (-1, 1): placing a
    breakpoint there restores fast convergence of the quadrature. Shared
    panel endpoints appear once with their weights summed.

    Args:
        points: Points per panel.
        breakpoints: Ascending panel boundaries covering [-1, 1].

    Returns:
        The composite rule.
    """
    base = lgl_rule(points)
    nodes: list = []
    weights: list = []
    for left, right in zip(breakpoints[:-1], breakpoints[1:]):
        half = 0.5 * (right - left)
        panel_nodes = left + half * (base.nodes + 1.0)
        panel_weights = half * base.weights
        if nodes:
            weights[-1] += panel_weights[0]
            panel_nodes, panel_weights = panel_nodes[1:], panel_weights[1:]
        nodes.extend(panel_nodes)
        weights.extend(panel_weights)
    return QuadratureRule(nodes=frozen_array(nodes), weights=frozen_array(weights))


def reference_rule(N: int) -> QuadratureRule:  # noqa: N803
    """Return the 4N-point rule used to measure continuous errors."""
    return lgl_rule(max(REFERENCE_POINTS_PER_DEGREE * N, 2))


# Basis and assembly


def basis_values(N: int, x: Union[np.ndarray, Sequence[float]]) -> np.ndarray:  # noqa: N803
    """Evaluate phi_0..phi_{N-2} at the points, shape (len(x), N - 1)."""
    values, _ = legendre_table(N, x)
    return (values[: N - 1] - values[2 : N + 1]).T


def basis_derivatives(N: int, x: Union[np.ndarray, Sequence[float]]) -> np.ndarray:  # noqa: N803
    """Evaluate phi_k' = -(2k + 3) L_{k+1} at the points, shape (len(x), N - 1)."""
    values, _ = legendre_table(N, x)
    k = np.arange(N - 1)
    return -(values[1:N] * (2 * k + 3)[:, None]).T


def _require_degree(N: int) -> None:  # noqa: N803
    if N < 2:
        msg = f"P0_N is empty for N < 2, got N = {N}"
        raise ContractViolationError(msg)


@lru_cache(maxsize=None)
def assemble_mass(N: int) -> np.ndarray:  # noqa: N803
    """Assemble the mass matrix (phi_j, phi_i) from its closed form.

    Args:
        N: Degree cap, N >= 2.

    Returns:
        Read-only dense (N - 1, N - 1) symmetric pentadiagonal matrix.

    Raises:
        ContractViolationError: If N < 2.
    """
    _require_degree(N)
    n = N - 1
    k = np.arange(n, dtype=np.float64)
    mass = np.diag(2.0 / (2 * k + 1) + 2.0 / (2 * k + 5))
    if n > 2:
        off = -2.0 / (2 * k[:-2] + 5)
        mass += np.diag(off, 2) + np.diag(off, -2)
    return frozen_array(mass)


@lru_cache(maxsize=None)
def assemble_stiffness(N: int) -> np.ndarray:  # noqa: N803
    """Assemble the stiffness matrix (phi_j', phi_i') = diag(4k + 6).

    Args:
        N: Degree cap, N >= 2.

    Returns:
        Read-only dense diagonal matrix.

    Raises:
        ContractViolationError: If N < 2.
    """
    _require_degree(N)
    k = np.arange(N - 1, dtype=np.float64)
    return frozen_array(np.diag(4 * k + 6))


def brute_force_mass(N: int, Q: Optional[int] = None) -> np.ndarray:  # noqa: N803
    """Assemble the mass matrix by Gauss-Lobatto quadrature (test oracle)."""
    _require_degree(N)
    rule = lgl_rule(Q or N + DEFAULT_QUADRATURE_EXTRA)
    phi = basis_values(N, rule.nodes)
    return phi.T @ (rule.weights[:, None] * phi)


def brute_force_stiffness(N: int, Q: Optional[int] = None) -> np.ndarray:  # noqa: N803
    """Assemble the stiffness matrix by Gauss-Lobatto quadrature (test oracle)."""
    _require_degree(N)
    rule = lgl_rule(Q or N + DEFAULT_QUADRATURE_EXTRA)
    dphi = basis_derivatives(N, rule.nodes)
    return dphi.T @ (rule.weights[:, None] * dphi)


@lru_cache(maxsize=64)
def make_space(N: int, quadrature_extra: int = DEFAULT_QUADRATURE_EXTRA) -> SpectralSpace:  # noqa: N803
    """Build the spectral space P0_N with its matrices and quadrature tables.

    Args:
        N: Degree cap, N >= 2.
        quadrature_extra: Points beyond N in the over-integration rule.

    Returns:
        The cached, immutable space.

    Raises:
        ContractViolationError: If N < 2.
    """
    _require_degree(N)
    rule = lgl_rule(N + quadrature_extra)
    space = SpectralSpace(
        N=N,
        quad=rule,
        mass=assemble_mass(N),
        stiffness_diagonal=frozen_array(np.diag(assemble_stiffness(N))),
        basis_at_nodes=frozen_array(basis_values(N, rule.nodes)),
        derivative_at_nodes=frozen_array(basis_derivatives(N, rule.nodes)),
    )
    logger.debug("Built spectral space N=%d with %d quadrature points", N, rule.size)
    return space


class SystemMatrix:
    """Banded Cholesky factorization of A = M + alpha0 S.

    Attributes:
        alpha0: Scale of the stiffness term.
        dense: A as a dense array, for matrix-vector products and audits.

    Example:
        >>> system = SystemMatrix(make_space(16), alpha0=0.28)
        >>> c = system.solve(rhs)
    """

    def __init__(self, space: SpectralSpace, alpha0: float) -> None:
        """Assemble and factorize the step matrix.

        Args:
            space: Spectral space.
            alpha0: Positive stiffness scale.

        Raises:
            FactorizationError: If the Cholesky factorization fails.
        """
        self.alpha0 = alpha0
        self.dense = space.mass + alpha0 * space.stiffness
        bands = min(2, space.dim - 1)
        banded = space.mass_banded()
        banded[2] += alpha0 * space.stiffness_diagonal
        try:
            self._factor = cholesky_banded(banded[2 - bands :], lower=False)
        except LinAlgError as e:
            raise FactorizationError(
                message="Cholesky factorization of M + alpha0 S failed",
                details=str(e),
            ) from e
        logger.debug("Factorized step matrix: N=%d alpha0=%s", space.N, alpha0)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve A c = rhs with the stored factor."""
        return cho_solve_banded((self._factor, False), rhs)

    def __matmul__(self, vector: np.ndarray) -> np.ndarray:
        """Return A @ vector."""
        return self.dense @ vector


# Projection and synthesis


def _as_function(psi: Union[Profile, Function]) -> Function:
    if isinstance(psi, Profile):
        return psi.value
    return psi


def _central_difference(psi: Function) -> Function:
    def derivative(x: np.ndarray) -> np.ndarray:
        return (psi(x + DIFFERENCE_STEP) - psi(x - DIFFERENCE_STEP)) / (2 * DIFFERENCE_STEP)

    return derivative


def check_boundary(psi: Union[Profile, Function], what: str = "function") -> None:
    """Raise if psi does not vanish at x = -1 and x = 1.

    Args:
        psi: Function or profile.
        what: Name used in the error message.

    Raises:
        BoundaryViolationError: If |psi(+-1)| exceeds 1e-10.
    """
    ends = np.asarray(_as_function(psi)(np.array([-1.0, 1.0])), dtype=np.float64)
    worst = float(np.max(np.abs(ends)))
    if not worst <= BOUNDARY_TOLERANCE:
        raise BoundaryViolationError(worst, BOUNDARY_TOLERANCE, what=what)


def load_vector(values: np.ndarray, space: SpectralSpace) -> np.ndarray:
    """Return (g, phi_i) for g sampled at the nodes of ``space.quad``."""
    return space.basis_at_nodes.T @ (space.quad.weights * values)


def project_h1(
    psi: Union[Profile, Function],
    space: SpectralSpace,
    alpha0: float,
    derivative: Optional[Function] = None,
    rule: Optional[QuadratureRule] = None,
) -> np.ndarray:
    """Compute the H1 projection onto P0_N.

    Solves (M + alpha0 S) c = r with r_i = (psi, phi_i) + alpha0 (psi', phi_i').
    Without an analytic derivative, psi' is approximated by central
    differences with step 1e-6, which limits the accuracy to about 1e-10.

    Args:
        psi: Function (or profile) vanishing at +-1.
        space: Target space.
        alpha0: Positive weight of the gradient term.
        derivative: Analytic psi'; taken from the profile when available.
        rule: Quadrature for the right-hand side; defaults to the space rule,
            raised to N + 16 points if the space uses fewer.

    Returns:
        Coefficients of the projection.

    Raises:
        BoundaryViolationError: If psi(+-1) != 0 beyond 1e-10.
        ContractViolationError: If alpha0 <= 0.
    """
    if not alpha0 > 0.0:
        msg = f"alpha0 must be positive, got {alpha0}"
        raise ContractViolationError(msg)
    check_boundary(psi)
    func = _as_function(psi)
    if derivative is None and isinstance(psi, Profile):
        derivative = psi.derivative
    if derivative is None:
        derivative = _central_difference(func)

    if rule is None and space.quad.size >= space.N + DEFAULT_QUADRATURE_EXTRA:
        rule = space.quad
        phi, dphi = space.basis_at_nodes, space.derivative_at_nodes
    else:
        rule = rule or lgl_rule(space.N + DEFAULT_QUADRATURE_EXTRA)
        phi, dphi = basis_values(space.N, rule.nodes), basis_derivatives(space.N, rule.nodes)

    values = np.asarray(func(rule.nodes), dtype=np.float64)
    slopes = np.asarray(derivative(rule.nodes), dtype=np.float64)
    rhs = phi.T @ (rule.weights * values) + alpha0 * (dphi.T @ (rule.weights * slopes))
    return SystemMatrix(space, alpha0).solve(rhs)


def synthesize(u: np.ndarray, points: Union[np.ndarray, Sequence[float]]) -> np.ndarray:
    """Evaluate u_N(x) = sum_k c_k phi_k(x) at the points."""
    coeffs = np.asarray(u, dtype=np.float64)
    return basis_values(coeffs.size + 1, points) @ coeffs


def synthesize_derivative(u: np.ndarray, points: Union[np.ndarray, Sequence[float]]) -> np.ndarray:
    """Evaluate u_N'(x) at the points."""
    coeffs = np.asarray(u, dtype=np.float64)
    return basis_derivatives(coeffs.size + 1, points) @ coeffs


# Norms


def l2_norm(u: np.ndarray) -> float:
    """Return ||u_N||_0 = sqrt(c^T M c)."""
    coeffs = np.asarray(u, dtype=np.float64)
    mass = assemble_mass(coeffs.size + 1)
    return float(np.sqrt(max(coeffs @ mass @ coeffs, 0.0)))


def h1_norm(u: np.ndarray, alpha0: float) -> float:
    """Return ||u_N||_1 = sqrt(c^T M c + alpha0 c^T S c), the alpha0-weighted norm."""
    coeffs = np.asarray(u, dtype=np.float64)
    n = coeffs.size + 1
    energy = coeffs @ assemble_mass(n) @ coeffs + alpha0 * (coeffs @ assemble_stiffness(n) @ coeffs)
    return float(np.sqrt(max(energy, 0.0)))


def standard_h1_norm(u: np.ndarray) -> float:
    """Return the unweighted H1 norm sqrt(||u||_0^2 + ||u'||_0^2)."""
    return h1_norm(u, 1.0)


def error_norms(
    u: np.ndarray,
    psi: Function,
    derivative: Function,
    alpha0: float,
    rule: Optional[QuadratureRule] = None,
) -> Tuple[float, float, float]:
    """Measure psi - u_N in the weighted H1, L2 and standard H1 norms.

    Args:
        u: Coefficients of u_N.
        psi: Reference function.
        derivative: Its derivative.
        alpha0: Weight of the gradient term.
        rule: Quadrature; defaults to the 4N-point reference rule.

    Returns:
        (weighted H1 error, L2 error, standard H1 error).
    """
    coeffs = np.asarray(u, dtype=np.float64)
    rule = rule or reference_rule(coeffs.size + 1)
    gap = np.asarray(psi(rule.nodes)) - synthesize(coeffs, rule.nodes)
    slope_gap = np.asarray(derivative(rule.nodes)) - synthesize_derivative(coeffs, rule.nodes)
    l2_sq = rule.integrate(gap**2)
    grad_sq = rule.integrate(slope_gap**2)
    return (
        float(np.sqrt(l2_sq + alpha0 * grad_sq)),
        float(np.sqrt(l2_sq)),
        float(np.sqrt(l2_sq + grad_sq)),
    )
