"""Milnor frames: bracket patterns and their named coefficients."""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from nilricci.algebra.catalog import StructureConstants, get_entry
from nilricci.algebra.structure import change_basis
from nilricci.config import Tolerances, get_tolerances
from nilricci.errors import PatternViolationError, SignDomainError, UnknownEntryError
from nilricci.types import DIM, AlgebraId, FrameCase, Mat5, SignDomain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FramePattern:
    """
    Bracket pattern of a Milnor frame.

    ``terms`` lists (i, j, k, name) with 1-based indices: [v_i, v_j] has
    component ``name`` along v_k. Every other component vanishes.
    """

    id: AlgebraId
    case: FrameCase
    terms: tuple[tuple[int, int, int, str], ...]
    signs: Mapping[str, SignDomain]
    extras: tuple[str, ...] = ()  # completion coefficients, 0 in the printed families

    @property
    def names(self) -> tuple[str, ...]:
        """Coefficient names in order of first appearance."""
        seen: list[str] = []
        for *_, name in self.terms:
            if name not in seen:
                seen.append(name)
        return tuple(seen)

    @property
    def family(self) -> tuple[str, ...]:
        """Names of the printed family (extras excluded)."""
        return tuple(n for n in self.names if n not in self.extras)

    def sign(self, name: str) -> SignDomain:
        return self.signs.get(name, "free")

    def positions(self) -> set[tuple[int, int, int]]:
        """0-based (i, j, k) positions allowed to be nonzero, i < j."""
        return {(i - 1, j - 1, k - 1) for i, j, k, _ in self.terms}


def _pattern(
    algebra_id: AlgebraId,
    case: FrameCase,
    terms: list[tuple[int, int, int, str]],
    signs: dict[str, SignDomain],
    extras: tuple[str, ...] = (),
) -> FramePattern:
    return FramePattern(algebra_id, case, tuple(terms), MappingProxyType(signs), extras)


# Registry of frame patterns; A4,1+A1 has two families
FRAME_PATTERNS: dict[tuple[AlgebraId, FrameCase], FramePattern] = {
    ("FiveA1", "main"): _pattern("FiveA1", "main", [], {}),
    ("A54", "main"): _pattern(
        "A54",
        "main",
        [(1, 3, 5, "alpha"), (1, 4, 5, "beta"), (2, 3, 5, "gamma")],
        {"beta": "positive", "gamma": "positive"},
    ),
    ("A31plus2A1", "main"): _pattern("A31plus2A1", "main", [(1, 2, 5, "alpha")], {"alpha": "positive"}),
    ("A41plusA1", "first"): _pattern(
        "A41plusA1",
        "first",
        [(1, 2, 3, "alpha"), (1, 2, 5, "gamma"), (1, 3, 5, "beta")],
        {"alpha": "positive", "beta": "positive"},
    ),
    # erratum rep-a41-second-a54
    ("A41plusA1", "second"): _pattern(
        "A41plusA1",
        "second",
        [(1, 2, 3, "alpha"), (1, 2, 4, "gamma"), (1, 2, 5, "delta"), (1, 3, 5, "beta")],
        {"alpha": "positive", "beta": "positive"},
        extras=("delta",),
    ),
    # erratum rep-a56-a53
    ("A56", "main"): _pattern(
        "A56",
        "main",
        [
            (1, 2, 3, "alpha"),
            (1, 2, 4, "beta"),
            (1, 2, 5, "zeta"),
            (1, 3, 4, "gamma"),
            (1, 3, 5, "delta"),
            (1, 4, 5, "epsilon"),
            (2, 3, 5, "sigma"),
        ],
        {"alpha": "negative", "gamma": "positive", "epsilon": "positive", "sigma": "positive"},
        extras=("zeta",),
    ),
    ("A55", "main"): _pattern(
        "A55",
        "main",
        [(1, 2, 4, "alpha"), (1, 2, 5, "beta"), (1, 3, 5, "gamma"), (2, 3, 5, "delta"), (2, 4, 5, "epsilon")],
        {"alpha": "positive", "gamma": "positive", "epsilon": "positive"},
    ),
    ("A53", "main"): _pattern(
        "A53",
        "main",
        [(1, 2, 3, "alpha"), (1, 2, 4, "beta"), (1, 3, 4, "gamma"), (1, 3, 5, "delta"), (2, 3, 5, "epsilon")],
        {"alpha": "positive", "gamma": "positive", "epsilon": "positive"},
    ),
    # erratum frame-a51-v5
    ("A51", "main"): _pattern(
        "A51",
        "main",
        [(1, 2, 4, "alpha"), (1, 2, 5, "beta"), (1, 3, 5, "gamma")],
        {"alpha": "positive", "gamma": "positive"},
    ),
    # erratum rep-a52-a42-a43
    ("A52", "main"): _pattern(
        "A52",
        "main",
        [
            (1, 2, 3, "alpha"),
            (1, 2, 4, "beta"),
            (1, 2, 5, "zeta"),
            (1, 3, 4, "gamma"),
            (1, 3, 5, "theta"),
            (1, 4, 5, "delta"),
        ],
        {"alpha": "positive", "gamma": "positive", "delta": "positive"},
        extras=("zeta", "theta"),
    ),
}


def frame_cases(algebra_id: AlgebraId) -> tuple[FrameCase, ...]:
    """Frame families of an algebra, in the order the solver tries them."""
    get_entry(algebra_id)
    return tuple(case for (aid, case) in FRAME_PATTERNS if aid == algebra_id)


def frame_pattern(algebra_id: AlgebraId, case: FrameCase | None = None) -> FramePattern:
    """
    Get the frame pattern of an algebra.

    Args:
        algebra_id: Catalog id.
        case: Family; defaults to the first one ("main", or "first" for A4,1+A1).

    Raises:
        UnknownAlgebraError: If the id is unknown.
        UnknownEntryError: If the case does not exist for the algebra.
    """
    cases = frame_cases(algebra_id)
    chosen = case or cases[0]
    if chosen not in cases:
        raise UnknownEntryError(chosen, cases)
    return FRAME_PATTERNS[(algebra_id, chosen)]


def _check_domain(name: str, value: float, domain: SignDomain) -> None:
    if domain == "positive" and not value > 0:
        raise SignDomainError(name, value, domain)
    if domain == "negative" and not value < 0:
        raise SignDomainError(name, value, domain)


@dataclass(frozen=True)
class FrameCoefficients:
    """
    Named bracket coefficients of a Milnor frame.

    Unused names are absent from ``values``; the attribute accessors return
    None for them.
    """

    id: AlgebraId
    values: Mapping[str, float]
    case: FrameCase = "main"

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", MappingProxyType(dict(self.values)))

    @classmethod
    def from_mapping(
        cls,
        algebra_id: AlgebraId,
        mapping: Mapping[str, float],
        case: FrameCase | None = None,
    ) -> "FrameCoefficients":
        """
        Build coefficients from a partial mapping.

        Names of the pattern that are missing default to 0.

        Raises:
            UnknownEntryError: If a name is not part of the pattern.
        """
        pattern = frame_pattern(algebra_id, case)
        names = pattern.names
        for name in mapping:
            if name not in names:
                raise UnknownEntryError(name, names)
        values = {n: float(mapping.get(n, 0.0)) for n in names}
        return cls(algebra_id, values, pattern.case)

    @property
    def pattern(self) -> FramePattern:
        return frame_pattern(self.id, self.case)

    def get(self, name: str) -> float | None:
        return self.values.get(name)

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    @property
    def alpha(self) -> float | None:
        return self.get("alpha")

    @property
    def beta(self) -> float | None:
        return self.get("beta")

    @property
    def gamma(self) -> float | None:
        return self.get("gamma")

    @property
    def delta(self) -> float | None:
        return self.get("delta")

    @property
    def epsilon(self) -> float | None:
        return self.get("epsilon")

    @property
    def sigma(self) -> float | None:
        return self.get("sigma")

    @property
    def zeta(self) -> float | None:
        return self.get("zeta")

    @property
    def theta(self) -> float | None:
        return self.get("theta")

    def check_signs(self) -> None:
        """
        Raises:
            SignDomainError: Naming the first coefficient outside its domain.
        """
        pattern = self.pattern
        for name in pattern.names:
            _check_domain(name, self.values.get(name, 0.0), pattern.sign(name))

    @property
    def admissible(self) -> bool:
        try:
            self.check_signs()
        except SignDomainError:
            return False
        return True

    @property
    def printed_family(self) -> bool:
        """True when every completion coefficient is 0."""
        return all(self.values.get(n, 0.0) == 0.0 for n in self.pattern.extras)

    def scaled(self, factor: float) -> "FrameCoefficients":
        return FrameCoefficients(self.id, {n: v * factor for n, v in self.values.items()}, self.case)

    def max_difference(self, other: "FrameCoefficients") -> float:
        names = set(self.values) | set(other.values)
        return max((abs(self.values.get(n, 0.0) - other.values.get(n, 0.0)) for n in names), default=0.0)


@dataclass(frozen=True, eq=False)
class MilnorFrame:
    """Orthonormal frame of eta * S with its bracket coefficients."""

    id: AlgebraId
    V: Mat5 = field(repr=False)  # columns are v1..v5 in the reference basis
    eta: float
    coeffs: FrameCoefficients

    def orthonormality_defect(self, gram: Mat5) -> float:
        """||V^T (eta S) V - I||_inf."""
        return float(np.max(np.abs(self.V.T @ (self.eta * gram) @ self.V - np.eye(DIM))))


def frame_coefficients(
    algebra_id: AlgebraId,
    basis: Mat5,
    sc: StructureConstants,
    case: FrameCase | None = None,
    tolerances: Tolerances | None = None,
) -> FrameCoefficients:
    """
    Read the named coefficients of a frame.

    Expands every [v_i, v_j] in the frame by a linear solve and checks that
    only the pattern's components are nonzero.

    Args:
        algebra_id: Catalog id selecting the pattern.
        basis: Frame matrix, columns v1..v5.
        sc: Structure constants in the reference basis.
        case: A4,1+A1 family; chosen from the v4 component of [v1,v2] when None.
        tolerances: Thresholds; defaults to get_tolerances().

    Returns:
        FrameCoefficients (signs are not checked here).

    Raises:
        SingularMatrixError: If the frame is singular.
        PatternViolationError: For the first off-pattern component above tolerance.
    """
    tol = tolerances or get_tolerances()
    frame_sc = change_basis(sc, basis, tol.singular)
    c = frame_sc.c
    if case is None and len(frame_cases(algebra_id)) > 1:
        case = "first" if abs(c[0, 1, 3]) <= tol.branch else "second"
        logger.debug(f"{algebra_id}: v4 component of [v1,v2] = {c[0, 1, 3]:.3e}, case {case}")
    pattern = frame_pattern(algebra_id, case)

    allowed = pattern.positions()
    for i in range(DIM):
        for j in range(i + 1, DIM):
            for k in range(DIM):
                if (i, j, k) not in allowed and abs(c[i, j, k]) > tol.pattern:
                    raise PatternViolationError((i, j, k), float(abs(c[i, j, k])), f"{algebra_id} frame bracket")

    values = {name: float(c[i - 1, j - 1, k - 1]) for i, j, k, name in pattern.terms}
    return FrameCoefficients(algebra_id, values, pattern.case)


def frame_structure_constants(coeffs: FrameCoefficients) -> StructureConstants:
    """
    Structure constants of the frame pattern with the given coefficients.

    Raises:
        SignDomainError: If a coefficient violates its sign domain.
    """
    coeffs.check_signs()
    table: dict[tuple[int, int], dict[int, float]] = {}
    for i, j, k, name in coeffs.pattern.terms:
        table.setdefault((i, j), {})[k] = coeffs.values.get(name, 0.0)
    return StructureConstants.from_brackets(table)
