"""Tests for the Legendre-Galerkin space."""

from __future__ import annotations

import numpy as np
import pytest
from numpy.polynomial import legendre

from fracthermistor.exceptions import BoundaryViolationError, ContractViolationError
from fracthermistor.models import SpectralSpace
from fracthermistor.presets import CONSTANT, ROUGH, SINPI
from fracthermistor.spectral_basis import (
    SystemMatrix,
    assemble_mass,
    assemble_stiffness,
    basis_values,
    brute_force_mass,
    brute_force_stiffness,
    check_boundary,
    composite_lgl_rule,
    error_norms,
    h1_norm,
    l2_norm,
    legendre_derivative_eval,
    legendre_eval,
    legendre_table,
    lgl_rule,
    load_vector,
    make_space,
    project_h1,
    standard_h1_norm,
    synthesize,
    synthesize_derivative,
)


class TestLegendre:
    """Tests for the Legendre recurrences."""

    def test_scalar_values(self) -> None:
        """Test L_2(0.5) and L_3'(0) against closed forms."""
        assert legendre_eval(2, 0.5) == pytest.approx(-0.125)
        assert legendre_derivative_eval(3, 0.0) == pytest.approx(-1.5)

    def test_table_matches_numpy(self) -> None:
        """Test the vectorised table against numpy's Legendre series."""
        x = np.linspace(-1.0, 1.0, 41)
        values, derivs = legendre_table(12, x)
        for k in range(13):
            coef = np.zeros(k + 1)
            coef[k] = 1.0
            np.testing.assert_allclose(values[k], legendre.legval(x, coef), atol=1e-13)
            np.testing.assert_allclose(
                derivs[k], legendre.legval(x, legendre.legder(coef)), atol=1e-11
            )

    def test_endpoint_values(self) -> None:
        """Test L_k(1) = 1 and L_k(-1) = (-1)^k."""
        values, _ = legendre_table(9, [-1.0, 1.0])
        np.testing.assert_allclose(values[:, 1], 1.0)
        np.testing.assert_allclose(values[:, 0], (-1.0) ** np.arange(10))


class TestQuadrature:
    """Tests for Gauss-Lobatto rules."""

    def test_three_points(self) -> None:
        """Test the three-point rule is Simpson's rule."""
        rule = lgl_rule(3)
        np.testing.assert_allclose(rule.nodes, [-1.0, 0.0, 1.0], atol=1e-15)
        np.testing.assert_allclose(rule.weights, [1 / 3, 4 / 3, 1 / 3], atol=1e-15)

    @pytest.mark.parametrize("points", [2, 4, 9, 24, 80])
    def test_exact_to_degree(self, points: int) -> None:
        """Test exactness for monomials up to degree 2Q - 3."""
        rule = lgl_rule(points)
        assert rule.size == points
        assert np.all(rule.weights > 0.0)
        for degree in range(2 * points - 2):
            exact = 0.0 if degree % 2 else 2.0 / (degree + 1)
            assert rule.integrate(rule.nodes**degree) == pytest.approx(exact, abs=1e-13)

    def test_nodes_symmetric(self) -> None:
        """Test that nodes are ascending and symmetric about 0."""
        nodes = lgl_rule(33).nodes
        assert np.all(np.diff(nodes) > 0.0)
        np.testing.assert_allclose(nodes, -nodes[::-1], atol=1e-15)

    def test_rejects_single_point(self) -> None:
        """Test that Q < 2 is rejected."""
        with pytest.raises(ContractViolationError):
            lgl_rule(1)

    def test_composite_rule(self) -> None:
        """Test that the composite rule integrates |x| exactly."""
        rule = composite_lgl_rule(5)
        assert rule.size == 9
        assert rule.weights.sum() == pytest.approx(2.0, abs=1e-14)
        assert rule.integrate(np.abs(rule.nodes)) == pytest.approx(1.0, abs=1e-14)


class TestAssembly:
    """Tests for the closed-form mass and stiffness matrices."""

    @pytest.mark.parametrize("N", [2, 3, 4, 8, 17, 33, 64])
    def test_mass_matches_quadrature(self, N: int) -> None:  # noqa: N803
        """Test the closed-form mass matrix against quadrature assembly."""
        np.testing.assert_allclose(assemble_mass(N), brute_force_mass(N), rtol=0.0, atol=1e-12)

    @pytest.mark.parametrize("N", [2, 3, 4, 8, 17, 33, 64])
    def test_stiffness_matches_quadrature(self, N: int) -> None:  # noqa: N803
        """Test the closed-form stiffness matrix against quadrature assembly."""
        np.testing.assert_allclose(
            assemble_stiffness(N), brute_force_stiffness(N), rtol=1e-14, atol=1e-12
        )

    def test_entries(self) -> None:
        """Test individual closed-form entries for N = 6."""
        mass = assemble_mass(6)
        stiffness = assemble_stiffness(6)
        assert mass.shape == (5, 5)
        assert mass[0, 0] == pytest.approx(2.0 + 0.4)
        assert mass[0, 2] == pytest.approx(-0.4)
        assert mass[2, 0] == mass[0, 2]
        assert mass[0, 1] == 0.0
        np.testing.assert_allclose(np.diag(stiffness), [6.0, 10.0, 14.0, 18.0, 22.0])
        assert np.count_nonzero(stiffness - np.diag(np.diag(stiffness))) == 0

    def test_rejects_small_degree(self) -> None:
        """Test that N < 2 is rejected."""
        with pytest.raises(ContractViolationError):
            assemble_mass(1)
        with pytest.raises(ContractViolationError):
            make_space(1)

    def test_basis_vanishes_at_boundary(self) -> None:
        """Test phi_k(+-1) = 0."""
        np.testing.assert_allclose(basis_values(12, [-1.0, 1.0]), 0.0, atol=1e-14)

    def test_space_dimensions(self, space: SpectralSpace) -> None:
        """Test the shapes of the tables stored in the space."""
        assert space.dim == 15
        assert space.quad.size == 32
        assert space.basis_at_nodes.shape == (32, 15)
        assert space.mass_banded().shape == (3, 15)


class TestSystemMatrix:
    """Tests for the banded Cholesky solve."""

    @pytest.mark.parametrize("N", [2, 3, 4, 16, 40])
    def test_solve_matches_dense(self, N: int) -> None:  # noqa: N803
        """Test the banded solve against a dense solve."""
        space = make_space(N)
        system = SystemMatrix(space, alpha0=0.37)
        rhs = np.random.default_rng(N).standard_normal(space.dim)
        dense = space.mass + 0.37 * space.stiffness
        np.testing.assert_allclose(system.solve(rhs), np.linalg.solve(dense, rhs), atol=1e-12)
        np.testing.assert_allclose(system @ system.solve(rhs), rhs, atol=1e-12)


class TestProjection:
    """Tests for the H1 projection."""

    def test_basis_function_is_reproduced(self, space: SpectralSpace) -> None:
        """Test that projecting phi_2 gives the unit vector e_2."""

        def phi2(x: np.ndarray) -> np.ndarray:
            return basis_values(16, x)[:, 2]

        coeffs = project_h1(phi2, space, alpha0=0.5)
        expected = np.zeros(space.dim)
        expected[2] = 1.0
        np.testing.assert_allclose(coeffs, expected, atol=1e-9)

    def test_analytic_derivative_is_exact(self, space: SpectralSpace) -> None:
        """Test that supplying phi_2' reproduces e_2 to round-off."""

        def phi2(x: np.ndarray) -> np.ndarray:
            return basis_values(16, x)[:, 2]

        def phi2_prime(x: np.ndarray) -> np.ndarray:
            return -7.0 * legendre_table(3, x)[0][3]

        coeffs = project_h1(phi2, space, alpha0=0.5, derivative=phi2_prime)
        expected = np.zeros(space.dim)
        expected[2] = 1.0
        np.testing.assert_allclose(coeffs, expected, atol=1e-13)

    def test_smooth_profile_converges(self) -> None:
        """Test that sin(pi x) projects to below 1e-10 by N = 24, monotonically."""

        def error(N: int) -> float:  # noqa: N803
            coeffs = project_h1(SINPI, make_space(N), alpha0=1.0)
            return error_norms(coeffs, SINPI.value, SINPI.derivative, 1.0)[0]

        # Beyond N = 16 the error sits at round-off and is no longer ordered.
        errors = [error(N) for N in range(4, 18, 2)]
        assert all(later < earlier for earlier, later in zip(errors, errors[1:]))
        assert error(24) < 1e-10

    def test_rough_profile_converges_algebraically(self) -> None:
        """Test that a finite-regularity profile settles to a stable algebraic slope."""
        degrees = [16, 24, 32, 48, 64]
        errors = []
        for N in degrees:  # noqa: N806
            coeffs = project_h1(ROUGH, make_space(N), alpha0=1.0)
            rule = composite_lgl_rule(2 * N)
            errors.append(error_norms(coeffs, ROUGH.value, ROUGH.derivative, 1.0, rule=rule)[0])
        slopes = np.diff(np.log(errors)) / np.diff(np.log(degrees))
        assert np.all(slopes < 0.0)
        assert np.ptp(slopes[-3:]) <= 0.6

    def test_rejects_boundary_values(self, space: SpectralSpace) -> None:
        """Test that a profile not vanishing at +-1 is rejected."""
        with pytest.raises(BoundaryViolationError) as exc_info:
            project_h1(CONSTANT, space, alpha0=0.5)
        assert exc_info.value.value == pytest.approx(1.0)
        assert exc_info.value.exit_code == 3

    def test_rejects_nonpositive_scale(self, space: SpectralSpace) -> None:
        """Test that alpha0 <= 0 is rejected."""
        with pytest.raises(ContractViolationError):
            project_h1(SINPI, space, alpha0=0.0)

    def test_check_boundary_accepts_small_values(self) -> None:
        """Test the 1e-10 boundary tolerance."""
        check_boundary(lambda x: 1e-11 + 0.0 * x)
        with pytest.raises(BoundaryViolationError):
            check_boundary(lambda x: 1e-9 + 0.0 * x)


class TestSynthesisAndNorms:
    """Tests for synthesis, load vectors and norms."""

    def test_synthesize_first_basis_function(self) -> None:
        """Test that e_0 synthesizes to 1.5 (1 - x^2)."""
        x = np.linspace(-1.0, 1.0, 7)
        coeffs = np.array([1.0, 0.0, 0.0])
        np.testing.assert_allclose(synthesize(coeffs, x), 1.5 * (1.0 - x**2), atol=1e-14)
        np.testing.assert_allclose(synthesize_derivative(coeffs, x), -3.0 * x, atol=1e-14)

    def test_load_of_constant(self, space: SpectralSpace) -> None:
        """Test (1, phi_k) = 2 for k = 0 and 0 otherwise."""
        load = load_vector(np.ones(space.quad.size), space)
        expected = np.zeros(space.dim)
        expected[0] = 2.0
        np.testing.assert_allclose(load, expected, atol=1e-13)

    def test_norms_of_first_basis_function(self) -> None:
        """Test ||phi_0||_0^2 = 2.4 and ||phi_0'||_0^2 = 6."""
        coeffs = np.array([1.0, 0.0, 0.0, 0.0])
        assert l2_norm(coeffs) == pytest.approx(np.sqrt(2.4))
        assert h1_norm(coeffs, 0.5) == pytest.approx(np.sqrt(2.4 + 3.0))
        assert standard_h1_norm(coeffs) == pytest.approx(np.sqrt(8.4))

    def test_error_norms_of_exact_member(self) -> None:
        """Test that a member of the space has zero error against itself."""
        coeffs = np.array([0.5, -0.25, 0.125])
        errors = error_norms(
            coeffs,
            lambda x: synthesize(coeffs, x),
            lambda x: synthesize_derivative(coeffs, x),
            alpha0=0.3,
        )
        np.testing.assert_allclose(errors, 0.0, atol=1e-13)


class TestProjectionProperties:
    """Tests for the algebraic properties of the projection and the matrices."""

    @staticmethod
    def _member(space: SpectralSpace, seed: int) -> np.ndarray:
        rng = np.random.default_rng(seed)
        return rng.standard_normal(space.dim) / (np.arange(space.dim) + 1.0)

    def test_members_are_fixed_points(self, space: SpectralSpace) -> None:
        """Test that a member of the space projects onto its own coefficients."""
        coeffs = self._member(space, 3)
        projected = project_h1(
            lambda x: synthesize(coeffs, x),
            space,
            alpha0=0.5,
            derivative=lambda x: synthesize_derivative(coeffs, x),
        )
        np.testing.assert_allclose(projected, coeffs, atol=1e-12)

    def test_idempotent(self, space: SpectralSpace) -> None:
        """Test that projecting a synthesized projection changes nothing."""
        first = project_h1(SINPI, space, alpha0=0.5)
        second = project_h1(
            lambda x: synthesize(first, x),
            space,
            alpha0=0.5,
            derivative=lambda x: synthesize_derivative(first, x),
        )
        np.testing.assert_allclose(second, first, atol=1e-12)

    def test_round_trip_at_nodes(self, space: SpectralSpace) -> None:
        """Test that projecting then synthesizing a member reproduces its node values."""
        coeffs = self._member(space, 5)
        nodes = space.quad.nodes
        projected = project_h1(
            lambda x: synthesize(coeffs, x),
            space,
            alpha0=0.25,
            derivative=lambda x: synthesize_derivative(coeffs, x),
        )
        np.testing.assert_allclose(
            synthesize(projected, nodes), synthesize(coeffs, nodes), atol=1e-12
        )

    @pytest.mark.parametrize("alpha0", [0.01, 0.5, 2.0])
    def test_galerkin_orthogonality(self, space: SpectralSpace, alpha0: float) -> None:
        """Test that the projection error is orthogonal to every basis function."""
        coeffs = project_h1(SINPI, space, alpha0=alpha0)
        nodes, weights = space.quad.nodes, space.quad.weights
        value_gap = SINPI(nodes) - space.basis_at_nodes @ coeffs
        slope_gap = SINPI.derivative(nodes) - space.derivative_at_nodes @ coeffs
        residual = space.basis_at_nodes.T @ (weights * value_gap) + alpha0 * (
            space.derivative_at_nodes.T @ (weights * slope_gap)
        )
        np.testing.assert_allclose(residual, 0.0, atol=1e-12)

    def test_synthesis_vanishes_at_boundary(self) -> None:
        """Test that every coefficient vector synthesizes to zero at +-1."""
        rng = np.random.default_rng(11)
        for dim in (1, 5, 15, 40):
            coeffs = rng.uniform(-1.0, 1.0, dim)
            np.testing.assert_allclose(synthesize(coeffs, [-1.0, 1.0]), 0.0, atol=1e-12)

    def test_weighted_norm_dominates_l2(self) -> None:
        """Test h1_norm >= l2_norm for random vectors and weights."""
        rng = np.random.default_rng(7)
        for _ in range(50):
            coeffs = rng.standard_normal(int(rng.integers(1, 30)))
            alpha0 = float(rng.uniform(0.0, 3.0))
            assert h1_norm(coeffs, alpha0) >= l2_norm(coeffs)

    @pytest.mark.parametrize("N", [4, 16, 48])
    def test_matrices_positive_definite(self, N: int) -> None:  # noqa: N803
        """Test x^T M x > 0 and x^T S x > 0 for random nonzero x."""
        mass, stiffness = assemble_mass(N), assemble_stiffness(N)
        rng = np.random.default_rng(N)
        for _ in range(100):
            x = rng.standard_normal(mass.shape[0])
            assert x @ mass @ x > 0.0
            assert x @ stiffness @ x > 0.0
