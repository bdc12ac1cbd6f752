"""Pydantic models for the Legendre-Galerkin space on (-1, 1).

This module provides the quadrature rule and the assembled spectral space
consumed by :mod:`fracthermistor.spectral_basis`.
"""

from __future__ import annotations

import numpy as np

from fracthermistor.models.base import ArrayModel


class QuadratureRule(ArrayModel):
    """A quadrature rule on [-1, 1].

    Attributes:
        nodes: Read-only nodes, ascending.
        weights: Read-only positive weights.

    Example:
        >>> rule = lgl_rule(3)
        >>> rule.integrate(rule.nodes**2)
        0.6666666666666666
    """

    nodes: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        """Number of points."""
        return int(self.nodes.shape[0])

    def integrate(self, values: np.ndarray) -> float:
        """Integrate sampled values against the weights.

        Args:
            values: Samples at ``nodes``.

        Returns:
            The quadrature sum.
        """
        return float(np.dot(self.weights, values))


class SpectralSpace(ArrayModel):
    """The space P0_N spanned by phi_k = L_k - L_{k+2}, k = 0..N-2.

    Attributes:
        N: Polynomial degree cap; the basis has N - 1 functions.
        quad: Over-integration rule used for nonlinear inner products.
        mass: Dense symmetric pentadiagonal mass matrix (phi_j, phi_i).
        stiffness_diagonal: Diagonal of the stiffness matrix, 4k + 6.
        basis_at_nodes: phi_k evaluated at ``quad.nodes``, shape (Q, N - 1).
        derivative_at_nodes: phi_k' evaluated at ``quad.nodes``.
    """

    N: int
    quad: QuadratureRule
    mass: np.ndarray
    stiffness_diagonal: np.ndarray
    basis_at_nodes: np.ndarray
    derivative_at_nodes: np.ndarray

    @property
    def dim(self) -> int:
        """Number of basis functions, N - 1."""
        return self.N - 1

    @property
    def stiffness(self) -> np.ndarray:
        """Dense diagonal stiffness matrix."""
        return np.diag(self.stiffness_diagonal)

    def mass_banded(self) -> np.ndarray:
        """Return M in LAPACK upper banded storage, shape (3, N - 1).

        Row 2 holds the diagonal and row 0 the second superdiagonal; the
        first superdiagonal is identically zero for this basis.
        """
        n = self.dim
        banded = np.zeros((3, n))
        banded[2] = np.diag(self.mass)
        if n > 2:
            banded[0, 2:] = np.diag(self.mass, 2)
        return banded
