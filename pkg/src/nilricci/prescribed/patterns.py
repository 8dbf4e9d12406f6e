"""Shapes of the prescribed tensors T for which Ric(g) = t^2 T can be solved."""

from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from nilricci.algebra.catalog import get_entry
from nilricci.config import Tolerances, get_tolerances
from nilricci.errors import NilRicciError, PatternViolationError
from nilricci.types import DIM, AlgebraId, FrameCase, Mat5


@dataclass(frozen=True)
class TensorPattern:
    """
    Allowed nonzero entries of T for one frame family.

    ``cells`` maps 1-based (i, j) with i <= j to the letter naming the entry.
    A non-strict pattern accepts any symmetric T; its letters are still read
    off, and the conditions decide the rest.
    """

    id: AlgebraId
    case: FrameCase
    cells: Mapping[tuple[int, int], str]
    strict: bool = True

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(self.cells.values())

    def violation(self, m: Mat5, tol: float) -> tuple[tuple[int, int], float] | None:
        """First (0-based position, magnitude) outside the pattern, or None."""
        if not self.strict:
            return None
        for i in range(DIM):
            for j in range(i, DIM):
                if (i + 1, j + 1) not in self.cells and abs(m[i, j]) > tol:
                    return (i, j), float(abs(m[i, j]))
        return None

    def read(self, m: Mat5) -> dict[str, float]:
        """Letter values of a tensor."""
        return {letter: float(m[i - 1, j - 1]) for (i, j), letter in self.cells.items()}

    def assemble(self, letters: Mapping[str, float]) -> Mat5:
        """Tensor with the given letters; missing letters are 0."""
        m = np.zeros((DIM, DIM))
        for (i, j), letter in self.cells.items():
            m[i - 1, j - 1] = m[j - 1, i - 1] = float(letters.get(letter, 0.0))
        return m


def _cells(off: dict[tuple[int, int], str], diagonal: str = "abcde") -> dict[tuple[int, int], str]:
    cells = {(k + 1, k + 1): diagonal[k] for k in range(DIM) if diagonal[k] != "."}
    cells.update(off)
    return dict(sorted(cells.items()))


def _tensor_pattern(
    algebra_id: AlgebraId,
    case: FrameCase,
    off: dict[tuple[int, int], str],
    diagonal: str = "abcde",
    strict: bool = True,
) -> TensorPattern:
    return TensorPattern(algebra_id, case, MappingProxyType(_cells(off, diagonal)), strict)


# Registry of tensor shapes, one per frame family
TENSOR_PATTERNS: dict[AlgebraId, tuple[TensorPattern, ...]] = {
    "FiveA1": (_tensor_pattern("FiveA1", "main", {}, diagonal=".....", strict=False),),
    "A54": (_tensor_pattern("A54", "main", {(1, 2): "f", (3, 4): "l"}),),
    # diag(a, b, 0, 0, c)
    "A31plus2A1": (_tensor_pattern("A31plus2A1", "main", {(5, 5): "c"}, diagonal="ab..."),),
    "A41plusA1": (
        _tensor_pattern("A41plusA1", "first", {(5, 5): "d", (2, 3): "e", (3, 5): "f"}, diagonal="abc.."),
        # erratum cond-a41-second
        _tensor_pattern("A41plusA1", "second", {(3, 4): "f"}),
    ),
    # erratum cond-a56-letter
    "A56": (_tensor_pattern("A56", "main", {(1, 2): "f", (2, 3): "g", (3, 4): "h", (4, 5): "i"}),),
    "A55": (
        _tensor_pattern(
            "A55",
            "main",
            {(1, 2): "f", (1, 3): "l", (1, 4): "h", (2, 3): "i", (3, 4): "j", (4, 5): "k"},
        ),
    ),
    "A53": (_tensor_pattern("A53", "main", {(1, 2): "f", (2, 3): "l", (3, 4): "h", (4, 5): "i"}),),
    "A51": (_tensor_pattern("A51", "main", {(2, 3): "f", (4, 5): "l"}),),
    "A52": (_tensor_pattern("A52", "main", {(2, 3): "f", (3, 4): "l"}),),
}


def sparsity_pattern(algebra_id: AlgebraId) -> tuple[TensorPattern, ...]:
    """Tensor shapes of an algebra, one per frame family."""
    get_entry(algebra_id)
    return TENSOR_PATTERNS[algebra_id]


@dataclass(frozen=True, eq=False)
class PrescribedTensor:
    """
    Symmetric left-invariant (0,2)-tensor T in a Milnor frame.

    Construction checks shape and symmetry; ``validate`` checks the
    sparsity pattern.
    """

    id: AlgebraId
    m: Mat5
    tolerances: Tolerances | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        m = np.array(self.m, dtype=np.float64)
        if m.shape != (DIM, DIM):
            raise NilRicciError(f"Tensor must be 5x5, got shape {m.shape}")
        asym = float(np.max(np.abs(m - m.T)))
        if asym > (self.tolerances or get_tolerances()).symmetry:
            raise NilRicciError(f"Tensor is not symmetric (max asymmetry {asym:.3e})")
        m = (m + m.T) / 2
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    @classmethod
    def from_letters(
        cls,
        algebra_id: AlgebraId,
        letters: Mapping[str, float],
        case: FrameCase | None = None,
        tolerances: Tolerances | None = None,
    ) -> "PrescribedTensor":
        """Tensor assembled from the letters of a pattern (first pattern by default)."""
        patterns = sparsity_pattern(algebra_id)
        pattern = next((p for p in patterns if p.case == case), patterns[0])
        unknown = sorted(set(letters) - set(pattern.letters))
        if unknown:
            raise NilRicciError(
                f"{algebra_id}: unknown tensor letters {unknown}; allowed {list(pattern.letters)}"
            )
        return cls(algebra_id, pattern.assemble(letters), tolerances)

    def matching_patterns(self, tolerances: Tolerances | None = None) -> tuple[TensorPattern, ...]:
        tol = tolerances or get_tolerances()
        return tuple(p for p in sparsity_pattern(self.id) if p.violation(self.m, tol.zero) is None)

    def validate(self, tolerances: Tolerances | None = None) -> tuple[TensorPattern, ...]:
        """
        Patterns the tensor fits.

        Raises:
            PatternViolationError: If it fits none; reports the first
                offending entry of the first pattern.
        """
        tol = tolerances or get_tolerances()
        matching = self.matching_patterns(tol)
        if not matching:
            position, magnitude = sparsity_pattern(self.id)[0].violation(self.m, tol.zero) or ((0, 0), 0.0)
            raise PatternViolationError(position, magnitude, f"{self.id} prescribed tensor")
        return matching

    @property
    def named(self) -> dict[str, float]:
        """Letters of the first matching pattern (first pattern if none match)."""
        matching = self.matching_patterns()
        pattern = matching[0] if matching else sparsity_pattern(self.id)[0]
        return pattern.read(self.m)
