"""Derivation algebras: null-space computation and the parametric displays."""

import functools
import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field

import numpy as np
import sympy as sp
from scipy import linalg

from nilricci.algebra.catalog import StructureConstants, get_entry
from nilricci.config import Tolerances, get_tolerances
from nilricci.errors import NilRicciError, UnknownEntryError
from nilricci.types import DIM, AlgebraId, Mat5

logger = logging.getLogger(__name__)

_PAIRS = [(i, j) for i in range(DIM) for j in range(i + 1, DIM)]

# Symbols a11 .. a55 used by the parametric displays
SYMBOLS: dict[str, sp.Symbol] = {
    f"a{i}{j}": sp.Symbol(f"a{i}{j}") for i in range(1, DIM + 1) for j in range(1, DIM + 1)
}


@dataclass(frozen=True)
class DerivationSpace:
    """Basis of Der(g) as 5x5 matrices."""

    basis: list[Mat5] = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def as_columns(self) -> np.ndarray:
        """25 x dim matrix whose columns are the row-major flattened basis elements."""
        if not self.basis:
            return np.zeros((DIM * DIM, 0))
        return np.column_stack([d.reshape(-1) for d in self.basis])


@dataclass(frozen=True)
class LemmaDerivationParams:
    """Values for the free entries of a parametric derivation display."""

    id: AlgebraId
    free_entries: Mapping[str, float] = field(default_factory=dict)


def derivation_defect(sc: StructureConstants, d: Mat5) -> float:
    """Max over i<j of |D[e_i,e_j] - [De_i,e_j] - [e_i,De_j]|."""
    c = sc.c
    lhs = np.einsum("km,ijm->ijk", d, c)
    rhs = np.einsum("mi,mjk->ijk", d, c) + np.einsum("mj,imk->ijk", d, c)
    return float(np.max(np.abs(lhs - rhs)))


def is_derivation(sc: StructureConstants, d: Mat5, tol: float) -> bool:
    """
    Check the derivation identity on every basis pair.

    Args:
        sc: Structure constants.
        d: Candidate derivation (column j is the image of e_j).
        tol: Largest accepted defect; must be positive.

    Returns:
        True iff the defect is at most tol.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    return derivation_defect(sc, d) <= tol


def _constraint_system(sc: StructureConstants) -> np.ndarray:
    """50 x 25 matrix of the derivation identity over pairs i<j, acting on row-major D."""
    c = sc.c
    eye = np.eye(DIM)
    # coefficient of D[p, q] in component k of the defect for pair (i, j)
    lhs = np.einsum("kp,ijq->ijkpq", eye, c)
    rhs = np.einsum("qi,pjk->ijkpq", eye, c) + np.einsum("qj,ipk->ijkpq", eye, c)
    full = lhs - rhs
    rows = [full[i, j].reshape(DIM, DIM * DIM) for i, j in _PAIRS]
    return np.vstack(rows)


def _null_space_pivoted(a: np.ndarray, tol: float) -> np.ndarray:
    """
    Null space of a by column-pivoted QR and back substitution.

    Each returned column has one free variable set to 1 before scaling, so
    the basis is deterministic for a given matrix.
    """
    n = a.shape[1]
    _, r, perm = linalg.qr(a, pivoting=True, mode="economic")
    diag = np.abs(np.diag(r))
    scale = diag[0] if diag.size and diag[0] > 0 else 1.0
    rank = int(np.sum(diag > tol * scale))
    r11 = r[:rank, :rank]
    r12 = r[:rank, rank:]
    solved = linalg.solve_triangular(r11, r12) if rank else np.zeros((0, n - rank))
    kernel = np.zeros((n, n - rank))
    kernel[perm[:rank], :] = -solved
    kernel[perm[rank:], :] = np.eye(n - rank)
    return kernel


def _normalize(v: np.ndarray, tol: float) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    out = v / v[k]
    out[np.abs(out) < tol] = 0.0
    return out


def derivation_space(sc: StructureConstants, tolerances: Tolerances | None = None) -> DerivationSpace:
    """
    Compute Der(g) as the null space of the derivation constraint system.

    Basis elements are normalized so their largest-magnitude entry is +1.
    The rank is read off the pivots at ``tolerances.zero``; every element
    is then checked with is_derivation at ``tolerances.derivation``.

    Raises:
        NilRicciError: If a computed element is not a derivation.
    """
    tol = tolerances or get_tolerances()
    kernel = _null_space_pivoted(_constraint_system(sc), tol.zero)
    basis = [_normalize(kernel[:, k], tol.zero).reshape(DIM, DIM) for k in range(kernel.shape[1])]
    for k, d in enumerate(basis):
        if not is_derivation(sc, d, tol.derivation):
            raise NilRicciError(
                f"Basis element {k + 1} is not a derivation (defect {derivation_defect(sc, d):.3e}); "
                f"pivot threshold {tol.zero:g} is too coarse"
            )
    logger.debug(f"Derivation space dimension {len(basis)}")
    return DerivationSpace(basis)


def span_contains(space: DerivationSpace, d: Mat5, tol: float = 1e-9) -> bool:
    """True iff d lies in the span of the basis (least-squares residual <= tol)."""
    cols = space.as_columns()
    target = np.asarray(d, dtype=np.float64).reshape(-1)
    if cols.shape[1] == 0:
        return bool(np.max(np.abs(target)) <= tol)
    x, *_ = linalg.lstsq(cols, target)
    return bool(np.max(np.abs(cols @ x - target)) <= tol)


def commutator(d1: Mat5, d2: Mat5) -> Mat5:
    return d1 @ d2 - d2 @ d1


# Parametric displays of Der(g), row by row. Dependent entries are written in
# terms of the free ones; every symbol left in a display is a free parameter.
_DISPLAYS: dict[AlgebraId, list[list[str]]] = {
    "FiveA1": [[f"a{i}{j}" for j in range(1, 6)] for i in range(1, 6)],
    "A54": [
        ["a11", "a12", "a13", "a14", "0"],
        ["-a43", "a22", "a23", "a13", "0"],
        ["a31", "a32", "a11+a44-a22", "-a12", "0"],
        ["a41", "a31", "a43", "a44", "0"],
        ["a51", "a52", "a53", "a54", "a11+a44"],
    ],
    "A31plus2A1": [
        ["a11", "a12", "0", "0", "0"],
        ["a21", "a22", "0", "0", "0"],
        ["a31", "a32", "a33", "a34", "0"],
        ["a41", "a42", "a43", "a44", "0"],
        ["a51", "a52", "a53", "a54", "a11+a22"],
    ],
    "A41plusA1": [
        ["a11", "0", "0", "0", "0"],
        ["a21", "a22", "0", "0", "0"],
        ["a31", "a32", "a11+a22", "0", "0"],
        ["a41", "a42", "0", "a44", "0"],
        ["a51", "a52", "a32", "a54", "2*a11+a22"],
    ],
    "A56": [
        ["a11", "0", "0", "0", "0"],
        ["a54+a32", "2*a11", "0", "0", "0"],
        ["a31", "a32", "3*a11", "0", "0"],
        ["a41", "a42", "-a32", "4*a11", "0"],
        ["a51", "a52", "a31-a42", "a54", "5*a11"],
    ],
    # erratum der-a55-a21: the (2,1) entry vanishes
    "A55": [
        ["a11", "a12", "0", "0", "0"],
        ["0", "a22", "0", "0", "0"],
        ["a31", "a32", "2*a22", "0", "0"],
        ["a41", "a42", "-a12", "a11+a22", "0"],
        ["a51", "a52", "a53", "a32-a41", "a11+2*a22"],
    ],
    "A53": [
        ["a11", "a12", "0", "0", "0"],
        ["a21", "a22", "0", "0", "0"],
        ["a31", "a32", "a11+a22", "0", "0"],
        ["a41", "a42", "a32", "2*a11+a22", "a12"],
        ["a51", "a52", "-a31", "a21", "a11+2*a22"],
    ],
    "A51": [
        ["a11", "0", "0", "0", "0"],
        ["a21", "a22", "a23", "0", "0"],
        ["a31", "a32", "a33", "0", "0"],
        ["a41", "a42", "a43", "a11+a22", "a23"],
        ["a51", "a52", "a53", "a32", "a11+a33"],
    ],
    # erratum der-a52-a55: (5,5) is 3 a11 + a22
    "A52": [
        ["a11", "0", "0", "0", "0"],
        ["a21", "a22", "0", "0", "0"],
        ["a31", "a43", "a11+a22", "0", "0"],
        ["a41", "a42", "a43", "2*a11+a22", "0"],
        ["a51", "a52", "a42", "a43", "3*a11+a22"],
    ],
}


@functools.cache
def parametric_form(algebra_id: AlgebraId) -> sp.ImmutableMatrix:
    """Parametric derivation display of an algebra as a sympy matrix."""
    get_entry(algebra_id)
    rows = _DISPLAYS[algebra_id]
    return sp.ImmutableMatrix([[sp.sympify(cell, locals=SYMBOLS) for cell in row] for row in rows])


@functools.cache
def parametric_free_parameters(algebra_id: AlgebraId) -> tuple[str, ...]:
    """Names of the free entries of the display, sorted by (row, column)."""
    return tuple(sorted(str(s) for s in parametric_form(algebra_id).free_symbols))


@functools.cache
def _parametric_function(algebra_id: AlgebraId) -> Callable[..., list[list[float]]]:
    names = parametric_free_parameters(algebra_id)
    args = [SYMBOLS[n] for n in names]
    return sp.lambdify(args, parametric_form(algebra_id).tolist(), modules="numpy")


def lemma_parametric_derivation(params: LemmaDerivationParams) -> Mat5:
    """
    Assemble the parametric derivation for the given free entries.

    Missing free entries default to 0; dependent entries are computed from
    the display constraints.

    Raises:
        UnknownEntryError: If a named entry is not free in the display.
    """
    names = parametric_free_parameters(params.id)
    for name in params.free_entries:
        if name not in names:
            raise UnknownEntryError(name, names)
    values = [float(params.free_entries.get(n, 0.0)) for n in names]
    matrix = np.array(_parametric_function(params.id)(*values), dtype=np.float64)
    return matrix.reshape(DIM, DIM)
