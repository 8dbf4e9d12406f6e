"""Reduction of metrics to representative form and Milnor frame construction.

A metric is given by an invertible g (S = g^{-T} g^{-1}). The reduction
writes phi g q = h with phi an automorphism, q orthogonal and h in the
representative family of the algebra:

1. L = g Q is the LQ factorization; the columns of L are S-orthonormal.
2. An orthogonal R, built from the brackets in the L frame, rotates
   U = L R into the Milnor frame pattern.
3. The frame coefficients determine h through the inverse coefficient map.
4. phi = h U^{-1} carries the frame U to the frame h, which has the same
   coefficients, so phi preserves brackets.
"""

import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np
from scipy import linalg

from nilricci.algebra.catalog import StructureConstants, get_entry
from nilricci.algebra.structure import change_basis
from nilricci.config import Tolerances, get_tolerances
from nilricci.errors import (
    PatternViolationError,
    ReductionError,
    SignDomainError,
    SingularMatrixError,
    UnknownEntryError,
)
from nilricci.metrics.decompose import InnerProduct, gram_to_gl, lq_decompose
from nilricci.metrics.frames import FrameCoefficients, MilnorFrame, frame_coefficients
from nilricci.types import DIM, AlgebraId, FrameCase, Mat5, Tensor5

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RepresentativePattern:
    """
    Sparsity pattern of a representative family.

    ``cells`` maps 1-based (row, column) to an entry name, or to the fixed
    value 1.0. Entries listed in ``positive`` must be > 0.
    """

    cells: Mapping[tuple[int, int], str | float]
    positive: tuple[str, ...]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v for v in self.cells.values() if isinstance(v, str))


def _rep_pattern(named: dict[tuple[int, int], str], positive: tuple[str, ...]) -> RepresentativePattern:
    cells: dict[tuple[int, int], str | float] = {(k, k): 1.0 for k in range(1, DIM + 1)}
    cells.update(named)
    return RepresentativePattern(MappingProxyType(dict(sorted(cells.items()))), positive)


# Registry of representative families (h11 = 1 throughout)
REPRESENTATIVE_PATTERNS: dict[tuple[AlgebraId, FrameCase], RepresentativePattern] = {
    ("FiveA1", "main"): _rep_pattern({}, ()),
    ("A54", "main"): _rep_pattern({(2, 1): "a21", (4, 4): "a44", (5, 5): "a55"}, ("a44", "a55")),
    ("A31plus2A1", "main"): _rep_pattern({(5, 5): "a55"}, ("a55",)),
    ("A41plusA1", "first"): _rep_pattern({(3, 3): "a33", (5, 3): "a53", (5, 5): "a55"}, ("a33", "a55")),
    # erratum rep-a41-second-a54
    ("A41plusA1", "second"): _rep_pattern(
        {(3, 3): "a33", (4, 3): "a43", (5, 4): "a54", (5, 5): "a55"}, ("a33", "a55")
    ),
    # erratum rep-a56-a53
    ("A56", "main"): _rep_pattern(
        {
            (2, 1): "a21",
            (2, 2): "a22",
            (3, 3): "a33",
            (4, 3): "a43",
            (4, 4): "a44",
            (5, 3): "a53",
            (5, 5): "a55",
        },
        ("a22", "a33", "a44", "a55"),
    ),
    ("A55", "main"): _rep_pattern(
        {(3, 3): "a33", (4, 3): "a43", (4, 4): "a44", (5, 4): "a54", (5, 5): "a55"},
        ("a33", "a44", "a55"),
    ),
    ("A53", "main"): _rep_pattern(
        {(2, 1): "a21", (3, 3): "a33", (4, 3): "a43", (4, 4): "a44", (5, 5): "a55"},
        ("a33", "a44", "a55"),
    ),
    ("A51", "main"): _rep_pattern({(4, 4): "a44", (5, 4): "a54", (5, 5): "a55"}, ("a44", "a55")),
    # erratum rep-a52-a42-a43
    ("A52", "main"): _rep_pattern(
        {(3, 2): "a32", (3, 3): "a33", (4, 2): "a42", (4, 3): "a43", (4, 4): "a44", (5, 5): "a55"},
        ("a33", "a44", "a55"),
    ),
}


@dataclass(frozen=True, eq=False)
class Representative:
    """A point of a representative family: named entries and the assembled h."""

    id: AlgebraId
    case: FrameCase
    entries: Mapping[str, float]
    matrix: Mat5 = field(repr=False)

    @classmethod
    def from_entries(
        cls, algebra_id: AlgebraId, entries: Mapping[str, float], case: FrameCase = "main"
    ) -> "Representative":
        """
        Assemble h from named entries; missing names default to 0.

        Raises:
            UnknownEntryError: If a name is not part of the family.
        """
        pattern = representative_pattern(algebra_id, case)
        names = pattern.names
        for name in entries:
            if name not in names:
                raise UnknownEntryError(name, names)
        matrix = np.zeros((DIM, DIM))
        values: dict[str, float] = {}
        for (i, j), cell in pattern.cells.items():
            if isinstance(cell, str):
                values[cell] = float(entries.get(cell, 0.0))
                matrix[i - 1, j - 1] = values[cell]
            else:
                matrix[i - 1, j - 1] = cell
        return cls(algebra_id, case, MappingProxyType(values), matrix)

    def pattern_defect(self, matrix: Mat5 | None = None) -> float:
        """Largest deviation of a matrix (default: self.matrix) from the family pattern."""
        m = self.matrix if matrix is None else matrix
        expected = np.zeros((DIM, DIM))
        free = np.zeros((DIM, DIM), dtype=bool)
        for (i, j), cell in representative_pattern(self.id, self.case).cells.items():
            if isinstance(cell, str):
                free[i - 1, j - 1] = True
            else:
                expected[i - 1, j - 1] = cell
        return float(np.max(np.where(free, 0.0, np.abs(m - expected))))

    def positivity_holds(self) -> bool:
        pattern = representative_pattern(self.id, self.case)
        return all(self.entries[name] > 0 for name in pattern.positive)


def representative_pattern(algebra_id: AlgebraId, case: FrameCase = "main") -> RepresentativePattern:
    get_entry(algebra_id)
    try:
        return REPRESENTATIVE_PATTERNS[(algebra_id, case)]
    except KeyError:
        cases = tuple(c for (aid, c) in REPRESENTATIVE_PATTERNS if aid == algebra_id)
        raise UnknownEntryError(case, cases) from None


# Inverse coefficient maps: frame coefficients -> representative entries.
# Each is the exact inverse of reading the coefficients off the frame h e_1..h e_5.
def _entries_a54(v: Mapping[str, float]) -> dict[str, float]:
    return {"a21": v["alpha"] / v["gamma"], "a44": v["beta"] / v["gamma"], "a55": 1 / v["gamma"]}


def _entries_a31(v: Mapping[str, float]) -> dict[str, float]:
    # erratum rep-a31-alpha
    return {"a55": 1 / v["alpha"]}


def _entries_a41_first(v: Mapping[str, float]) -> dict[str, float]:
    a33 = 1 / v["alpha"]
    a55 = a33 / v["beta"]
    return {"a33": a33, "a53": -v["gamma"] * a33 * a55, "a55": a55}


def _entries_a41_second(v: Mapping[str, float]) -> dict[str, float]:
    if v["gamma"] == 0:
        raise SignDomainError("gamma", 0.0, "nonzero")
    a33 = 1 / v["alpha"]
    a55 = a33 / v["beta"]
    return {"a33": a33, "a43": -v["gamma"] * a33, "a54": -v["delta"] * a55 / v["gamma"], "a55": a55}


def _entries_a56(v: Mapping[str, float]) -> dict[str, float]:
    alpha, gamma, epsilon = v["alpha"], v["gamma"], v["epsilon"]
    a55 = -v["sigma"] / (alpha * gamma**2 * epsilon**2)
    a44 = epsilon * a55
    a33 = gamma * a44
    a22 = -alpha * a33
    a43 = -v["beta"] * a44 / alpha
    # erratum frame-a56-delta: delta = (a43 + a21 a33) / a55
    a21 = (v["delta"] * a55 - a43) / a33
    a53 = -v["zeta"] * a55 / alpha
    return {"a21": a21, "a22": a22, "a33": a33, "a43": a43, "a44": a44, "a53": a53, "a55": a55}


def _entries_a55(v: Mapping[str, float]) -> dict[str, float]:
    a44 = 1 / v["alpha"]
    a55 = a44 / v["epsilon"]
    return {
        "a33": v["gamma"] * a55,
        "a43": v["delta"] * a55,
        "a44": a44,
        "a54": -v["beta"] * a44 * a55,
        "a55": a55,
    }


def _entries_a53(v: Mapping[str, float]) -> dict[str, float]:
    a33 = 1 / v["alpha"]
    a44 = a33 / v["gamma"]
    a55 = a33 / v["epsilon"]
    return {
        "a21": v["delta"] * a55 / a33,
        "a33": a33,
        "a43": -v["beta"] * a33 * a44,
        "a44": a44,
        "a55": a55,
    }


def _entries_a51(v: Mapping[str, float]) -> dict[str, float]:
    a44 = 1 / v["alpha"]
    a55 = 1 / v["gamma"]
    return {"a44": a44, "a54": -v["beta"] * a44 * a55, "a55": a55}


def _entries_a52(v: Mapping[str, float]) -> dict[str, float]:
    a33 = 1 / v["alpha"]
    a44 = a33 / v["gamma"]
    a55 = a44 / v["delta"]
    a43 = v["theta"] * a55
    return {
        "a32": v["beta"] * a44 + a43 / a33,
        "a33": a33,
        "a42": v["zeta"] * a55,
        "a43": a43,
        "a44": a44,
        "a55": a55,
    }


_INVERSE_MAPS: dict[tuple[AlgebraId, FrameCase], Callable[[Mapping[str, float]], dict[str, float]]] = {
    ("FiveA1", "main"): lambda v: {},
    ("A54", "main"): _entries_a54,
    ("A31plus2A1", "main"): _entries_a31,
    ("A41plusA1", "first"): _entries_a41_first,
    ("A41plusA1", "second"): _entries_a41_second,
    ("A56", "main"): _entries_a56,
    ("A55", "main"): _entries_a55,
    ("A53", "main"): _entries_a53,
    ("A51", "main"): _entries_a51,
    ("A52", "main"): _entries_a52,
}


def representative_from_coefficients(coeffs: FrameCoefficients) -> Representative:
    """
    Representative whose frame h e_1..h e_5 has the given coefficients.

    Raises:
        SignDomainError: If the coefficients are not admissible.
    """
    coeffs.check_signs()
    entries = _INVERSE_MAPS[(coeffs.id, coeffs.case)](coeffs.values)
    return Representative.from_entries(coeffs.id, entries, coeffs.case)


def automorphism_defect(sc: StructureConstants, phi: Mat5) -> float:
    """Max over i<j of |phi [e_i,e_j] - [phi e_i, phi e_j]|."""
    lhs = np.einsum("kl,ijl->ijk", phi, sc.c)
    rhs = np.einsum("pi,qj,pqk->ijk", phi, phi, sc.c)
    return float(np.max(np.abs(lhs - rhs)))


def is_automorphism(sc: StructureConstants, phi: Mat5, tol: float) -> bool:
    """True iff phi preserves every basis bracket within tol."""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    return automorphism_defect(sc, phi) <= tol


# Canonical rotations of the LQ frame. Each receives the structure constants
# in the L frame (orthonormal for the reference dot product) and returns an
# orthogonal R such that L R has the Milnor pattern.
def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _perp(v: np.ndarray) -> np.ndarray:
    return np.array([-v[1], v[0]])


def _pick_unit(projector: np.ndarray) -> np.ndarray:
    """Normalized column of largest norm of an orthogonal projector (first on ties)."""
    norms = np.linalg.norm(projector, axis=0)
    return _unit(projector[:, int(np.argmax(norms))])


def _rotation_a54(c: Tensor5, tol: Tolerances) -> Mat5:
    # [l_i, l_j] = omega_ij l5 for i, j <= 4
    omega = c[:4, :4, 4]
    v4 = np.array([0.0, 0.0, 0.0, 1.0])
    v1 = _unit(omega @ v4)
    complement = np.eye(4) - np.outer(v1, v1) - np.outer(v4, v4)
    w = complement @ (omega @ v1)
    if np.linalg.norm(w) > tol.zero:
        wn = _unit(w)
        v2 = _pick_unit(complement - np.outer(wn, wn))
    else:
        v2 = _pick_unit(complement)
    v3 = _pick_unit(complement - np.outer(v2, v2))
    if v2 @ omega @ v3 < 0:
        v3 = -v3
    rotation = np.eye(DIM)
    rotation[:4, :4] = np.column_stack([v1, v2, v3, v4])
    return rotation


def _rotation_a55(c: Tensor5, tol: Tolerances) -> Mat5:
    m = c[:2, 3, 4]
    v2 = _unit(m)
    v1 = _perp(v2)
    if v1 @ c[:2, :2, 3] @ v2 < 0:
        v1 = -v1
    s3 = 1.0 if v1 @ c[:2, 2, 4] > 0 else -1.0
    rotation = np.eye(DIM)
    rotation[:2, :2] = np.column_stack([v1, v2])
    rotation[2, 2] = s3
    return rotation


def _rotation_a53(c: Tensor5, tol: Tolerances) -> Mat5:
    # columns: v3-bracket images of l1, l2 in the (l4, l5) plane
    m = c[:2, 2, 3:].T
    w = c[0, 1, 3:]
    if np.linalg.norm(w) > tol.zero:
        v5 = _unit(_perp(w))
        if v5[1] < 0 or (v5[1] == 0 and v5[0] < 0):
            v5 = -v5
    else:
        v5 = np.array([0.0, 1.0])
    v2 = _unit(linalg.solve(m, v5))
    v1 = np.array([v2[1], -v2[0]])
    if v1 @ c[:2, :2, 2] @ v2 < 0:
        v1 = -v1
    v4 = np.array([v5[1], -v5[0]])
    if (m @ v1) @ v4 < 0:
        v4 = -v4
    rotation = np.eye(DIM)
    rotation[:2, :2] = np.column_stack([v1, v2])
    rotation[3:, 3:] = np.column_stack([v4, v5])
    return rotation


_ROTATIONS: dict[AlgebraId, Callable[[Tensor5, Tolerances], Mat5]] = {
    "A54": _rotation_a54,
    "A55": _rotation_a55,
    "A53": _rotation_a53,
}


def canonical_rotation(algebra_id: AlgebraId, lq_frame: StructureConstants, tolerances: Tolerances) -> Mat5:
    """Orthogonal R taking an LQ frame to the Milnor pattern (identity where L already fits)."""
    rotate = _ROTATIONS.get(algebra_id)
    if rotate is None:
        return np.eye(DIM)
    return rotate(lq_frame.c, tolerances)


@dataclass(frozen=True, eq=False)
class Reduction:
    """phi g q = rep.matrix with phi an automorphism and q orthogonal."""

    phi: Mat5 = field(repr=False)
    q: Mat5 = field(repr=False)
    rep: Representative
    frame: Mat5 = field(repr=False)  # U = phi^{-1} h, S-orthonormal
    coeffs: FrameCoefficients
    residual: float  # ||phi g q - h||_inf
    scale: float = 1.0

    def orthogonality_defect(self) -> float:
        return float(np.max(np.abs(self.q.T @ self.q - np.eye(DIM))))


def reduce(algebra_id: AlgebraId, g: Mat5, tolerances: Tolerances | None = None) -> Reduction:
    """
    Reduce g to the representative family of an algebra.

    Args:
        algebra_id: Catalog id.
        g: Invertible matrix; the metric is S = g^{-T} g^{-1}.
        tolerances: Thresholds; defaults to get_tolerances().

    Returns:
        Reduction with phi g q = rep.matrix.

    Raises:
        SingularMatrixError: If g is singular.
        ReductionError: If the consistency checks fail.
    """
    tol = tolerances or get_tolerances()
    sc = get_entry(algebra_id).sc
    g = np.asarray(g, dtype=np.float64)
    lower, q0 = lq_decompose(g, tol.singular)
    rotation = canonical_rotation(algebra_id, change_basis(sc, lower, tol.singular), tol)
    frame = lower @ rotation

    try:
        coeffs = frame_coefficients(algebra_id, frame, sc, tolerances=tol)
    except PatternViolationError as e:
        raise ReductionError(f"{algebra_id}: rotated frame misses the bracket pattern", e.magnitude) from e
    logger.debug(f"{algebra_id}: frame coefficients {dict(coeffs.values)}")

    rep = representative_from_coefficients(coeffs)
    phi = rep.matrix @ linalg.inv(frame)
    q = q0 @ rotation
    residual = float(np.max(np.abs(phi @ g @ q - rep.matrix)))
    if residual > tol.pattern:
        raise ReductionError(f"{algebra_id}: phi g q differs from the representative", residual)
    defect = automorphism_defect(sc, phi)
    if defect > tol.pattern * max(1.0, float(np.max(np.abs(phi))) ** 2):
        raise ReductionError(f"{algebra_id}: phi is not an automorphism", defect)
    return Reduction(phi=phi, q=q, rep=rep, frame=frame, coeffs=coeffs, residual=residual)


def milnor_frame(algebra_id: AlgebraId, inner: InnerProduct, tolerances: Tolerances | None = None) -> MilnorFrame:
    """
    Milnor frame of a metric.

    V = phi^{-1} h / sqrt(eta) with eta = 1 / (v1^T S v1), so that
    V^T (eta S) V = I.

    Raises:
        NotPositiveDefiniteError: If S is not positive-definite.
        ReductionError: If the reduction fails its checks.
    """
    tol = tolerances or get_tolerances()
    reduction = reduce(algebra_id, gram_to_gl(inner), tol)
    try:
        unscaled = linalg.solve(reduction.phi, reduction.rep.matrix)
    except linalg.LinAlgError as e:
        raise SingularMatrixError("phi", 0.0) from e
    eta = 1.0 / inner.norm_squared(unscaled[:, 0])
    basis = unscaled / np.sqrt(eta)
    coeffs = frame_coefficients(algebra_id, basis, get_entry(algebra_id).sc, reduction.rep.case, tol)
    return MilnorFrame(algebra_id, basis, eta, coeffs)

