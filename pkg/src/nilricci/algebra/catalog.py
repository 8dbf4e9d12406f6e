"""Structure constants and the catalog of 5-dimensional nilpotent Lie algebras."""

import re
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from nilricci.errors import UnknownAlgebraError
from nilricci.types import ALGEBRA_IDS, DIM, AlgebraId, Tensor5

# 1-based bracket relations: (i, j) -> {k: coefficient of e_k in [e_i, e_j]}
BracketTable = Mapping[tuple[int, int], Mapping[int, float]]


@dataclass(frozen=True, eq=False)
class StructureConstants:
    """
    Bracket tensor of a 5-dimensional Lie algebra in a fixed basis.

    ``c[i, j, k]`` is the coefficient of e_k in [e_i, e_j] (0-based). The
    array is copied and made read-only on construction.
    """

    c: Tensor5

    def __post_init__(self) -> None:
        c = np.array(self.c, dtype=np.float64)
        if c.shape != (DIM, DIM, DIM):
            raise ValueError(f"Structure constants must have shape (5, 5, 5), got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @classmethod
    def zero(cls) -> "StructureConstants":
        """The abelian algebra."""
        return cls(np.zeros((DIM, DIM, DIM)))

    @classmethod
    def from_brackets(cls, table: BracketTable) -> "StructureConstants":
        """
        Build structure constants from 1-based bracket relations.

        Only one ordering of each pair is needed; the antisymmetric partner
        is filled in.

        Args:
            table: Mapping (i, j) -> {k: coefficient}, e.g. {(1, 4): {5: 1}}.

        Returns:
            StructureConstants with [e_i, e_j] = sum_k coefficient * e_k.
        """
        c = np.zeros((DIM, DIM, DIM))
        for (i, j), image in table.items():
            if i == j:
                raise ValueError(f"[e{i},e{j}] must vanish")
            for k, value in image.items():
                c[i - 1, j - 1, k - 1] = value
                c[j - 1, i - 1, k - 1] = -value
        return cls(c)

    def antisymmetry_defect(self) -> float:
        """Max |c[i,j,k] + c[j,i,k]|."""
        return float(np.max(np.abs(self.c + self.c.transpose(1, 0, 2))))

    def brackets(self, tol: float = 1e-12) -> list[str]:
        """
        Nonzero bracket relations with i < j, formatted like ``[e1,e4]=e5``.

        Args:
            tol: Coefficients at or below this magnitude are omitted.

        Returns:
            One string per nonzero bracket, in (i, j) order.
        """
        relations = []
        for i in range(DIM):
            for j in range(i + 1, DIM):
                terms = _format_combination(self.c[i, j], tol)
                if terms:
                    relations.append(f"[e{i + 1},e{j + 1}]={terms}")
        return relations


def _format_combination(vector: np.ndarray, tol: float) -> str:
    terms: list[str] = []
    for k, value in enumerate(vector):
        if abs(value) <= tol:
            continue
        sign = "-" if value < 0 else "+"
        magnitude = abs(float(value))
        coefficient = "" if np.isclose(magnitude, 1.0) else f"{magnitude:g}"
        term = f"{coefficient}e{k + 1}"
        if not terms:
            terms.append(term if sign == "+" else f"-{term}")
        else:
            terms.append(f"{sign}{term}")
    return "".join(terms)


@dataclass(frozen=True)
class CatalogEntry:
    """One of the nine nilpotent Lie algebras of dimension 5."""

    id: AlgebraId
    name: str  # display name, e.g. "A5,4"
    sc: StructureConstants = field(repr=False)


def _entry(algebra_id: AlgebraId, name: str, table: BracketTable) -> CatalogEntry:
    return CatalogEntry(algebra_id, name, StructureConstants.from_brackets(table))


# Registry of the nine algebras, in table order
CATALOG: dict[AlgebraId, CatalogEntry] = {
    "FiveA1": _entry("FiveA1", "5A1", {}),
    "A54": _entry("A54", "A5,4", {(1, 4): {5: 1}, (2, 3): {5: 1}}),
    "A31plus2A1": _entry("A31plus2A1", "A3,1+2A1", {(1, 2): {5: 1}}),
    "A41plusA1": _entry("A41plusA1", "A4,1+A1", {(1, 2): {3: 1}, (1, 3): {5: 1}}),
    "A56": _entry(
        "A56",
        "A5,6",
        {(1, 2): {3: -1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (2, 3): {5: 1}},
    ),
    "A55": _entry("A55", "A5,5", {(1, 2): {4: 1}, (1, 3): {5: 1}, (2, 4): {5: 1}}),
    "A53": _entry("A53", "A5,3", {(1, 2): {3: 1}, (1, 3): {4: 1}, (2, 3): {5: 1}}),
    "A51": _entry("A51", "A5,1", {(1, 2): {4: 1}, (1, 3): {5: 1}}),
    "A52": _entry("A52", "A5,2", {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}}),
}

# Normalized spellings -> canonical id (canonical tags are added below)
_ALIASES: dict[str, AlgebraId] = {
    "5a1": "FiveA1",
    "a31+2a1": "A31plus2A1",
    "a41+a1": "A41plusA1",
}
_ALIASES.update({algebra_id.lower(): algebra_id for algebra_id in ALGEBRA_IDS})


def catalog() -> list[CatalogEntry]:
    """All nine catalog entries, in table order."""
    return list(CATALOG.values())


def get_entry(algebra_id: AlgebraId) -> CatalogEntry:
    """
    Get a catalog entry by canonical id.

    Raises:
        UnknownAlgebraError: If the id is not one of the nine tags.
    """
    try:
        return CATALOG[algebra_id]
    except KeyError:
        raise UnknownAlgebraError(str(algebra_id)) from None


def parse_algebra_id(text: str) -> AlgebraId:
    """
    Resolve a user-supplied algebra name.

    Accepts canonical tags ("A54", "A31plus2A1"), display names ("A5,4",
    "A3,1+2A1", "5A1") and LaTeX-ish spellings ("A_{5,4}").

    Args:
        text: Name as typed by the user.

    Returns:
        Canonical AlgebraId.

    Raises:
        UnknownAlgebraError: If no algebra matches.
    """
    key = re.sub(r"[\s_{}]", "", text).lower().replace(",", "")
    key = key.replace("plus", "+").replace("⊕", "+")
    try:
        return _ALIASES[key]
    except KeyError:
        raise UnknownAlgebraError(text) from None
