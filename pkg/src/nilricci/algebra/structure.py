"""Bracket arithmetic on structure constants."""

import logging

import numpy as np
from scipy import linalg

from nilricci.algebra.catalog import StructureConstants
from nilricci.errors import SingularMatrixError
from nilricci.types import DIM, Mat5, Vec5

logger = logging.getLogger(__name__)

# Relative rank threshold for spanning sets
RANK_TOL = 1e-10


def bracket(sc: StructureConstants, x: Vec5, y: Vec5) -> Vec5:
    """[x, y] = sum_{i,j} x_i y_j c[i, j, :]."""
    return np.einsum("i,j,ijk->k", x, y, sc.c)


def ad(sc: StructureConstants, u: Vec5) -> Mat5:
    """
    Adjoint map of u.

    Returns:
        Matrix whose column j is [u, e_j].
    """
    return np.einsum("i,ijk->kj", u, sc.c)


def jacobi_defect(sc: StructureConstants) -> float:
    """
    Largest absolute value of the Jacobi expression.

    Evaluates sum_m c[i,j,m] c[m,k,l] + c[j,k,m] c[m,i,l] + c[k,i,m] c[m,j,l]
    over every index quadruple.
    """
    t = np.einsum("ijm,mkl->ijkl", sc.c, sc.c)
    jac = t + np.einsum("jkil->ijkl", t) + np.einsum("kijl->ijkl", t)
    return float(np.max(np.abs(jac)))


def _span(vectors: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the span of the given columns."""
    if vectors.size == 0 or not np.any(vectors):
        return np.zeros((DIM, 0))
    return linalg.orth(vectors, rcond=RANK_TOL)


def lower_central_series(sc: StructureConstants) -> list[int]:
    """
    Dimensions of g, [g,g], [g,[g,g]], ... until the series stabilizes.

    The last entry is 0 exactly when the algebra is nilpotent.
    """
    current = np.eye(DIM)
    dims = [DIM]
    while current.shape[1] > 0:
        images = np.einsum("ai,bj,abk->kij", np.eye(DIM), current, sc.c).reshape(DIM, -1)
        following = _span(images)
        if following.shape[1] == current.shape[1]:
            break
        dims.append(following.shape[1])
        current = following
    logger.debug(f"Lower central series dimensions: {dims}")
    return dims


def derived_algebra(sc: StructureConstants) -> np.ndarray:
    """Orthonormal basis (columns, reference dot product) of [g, g]."""
    return _span(sc.c.reshape(DIM * DIM, DIM).T)


def center(sc: StructureConstants) -> np.ndarray:
    """Orthonormal basis (columns, reference dot product) of the center."""
    # Row (j, k) of the system holds c[:, j, k]: x is central iff sum_i x_i c[i, j, k] = 0
    system = sc.c.transpose(1, 2, 0).reshape(DIM * DIM, DIM)
    return linalg.null_space(system, rcond=RANK_TOL)


def change_basis(sc: StructureConstants, basis: Mat5, singular_tol: float = 1e-12) -> StructureConstants:
    """
    Structure constants in a new basis.

    Args:
        sc: Constants in the reference basis.
        basis: Matrix whose columns are the new basis vectors.
        singular_tol: |det(basis)| at or below this is rejected.

    Returns:
        Constants c' with [v_i, v_j] = sum_k c'[i, j, k] v_k.

    Raises:
        SingularMatrixError: If the basis is not invertible.
    """
    det = float(np.linalg.det(basis))
    if abs(det) <= singular_tol:
        raise SingularMatrixError("Frame matrix", det)
    images = np.einsum("pi,qj,pqk->kij", basis, basis, sc.c).reshape(DIM, -1)
    coords = linalg.solve(basis, images)
    return StructureConstants(coords.reshape(DIM, DIM, DIM).transpose(1, 2, 0))


def bracket_norms_squared(sc: StructureConstants) -> float:
    """sum_{i<j} |[e_i, e_j]|^2 in the reference dot product."""
    return float(np.sum(sc.c**2) / 2)

