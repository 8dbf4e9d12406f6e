"""Solve Ric(g) = t^2 T on a Milnor frame family.

The Ricci matrix of a frame family is quadratic in the bracket
coefficients, and its diagonal only involves their squares. ``solve``
therefore solves a linear system for the squares, takes square roots,
enumerates the signs left free and keeps the first candidate whose Ricci
matrix reproduces T. Every solution is normalized to t = 1; the family
(s * coeffs, s * t) solves the same equation for any s > 0.
"""

import itertools
import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy import linalg

from nilricci.config import Tolerances, get_tolerances
from nilricci.curvature.closed_form import quadratic_structure
from nilricci.curvature.ricci import ricci_nilpotent
from nilricci.errors import DegenerateBranchError
from nilricci.metrics.frames import FrameCoefficients, frame_pattern, frame_structure_constants
from nilricci.prescribed.conditions import ConditionReport, check_conditions
from nilricci.prescribed.patterns import PrescribedTensor, TensorPattern
from nilricci.types import AlgebraId, FrameCase, Mat5

logger = logging.getLogger(__name__)

# Only the A5,6 search is restricted (zeta = 0), so its conditions are sufficient only
SUFFICIENCY_ONLY: frozenset[AlgebraId] = frozenset({"A56"})


@dataclass(frozen=True)
class Solution:
    """Frame coefficients and scale t with Ric = t^2 T."""

    id: AlgebraId
    coeffs: FrameCoefficients
    t: float
    residual: float
    sufficiency_only: bool = False
    case: FrameCase = "main"

    def scaled(self, s: float) -> "Solution":
        """Member (s * coeffs, s * t) of the solution family."""
        if s <= 0:
            raise ValueError(f"Scale must be positive, got {s}")
        return replace(self, coeffs=self.coeffs.scaled(s), t=self.t * s, residual=self.residual * s * s)


@dataclass(frozen=True)
class SolveResult:
    """Conditions and solver outcome for one tensor."""

    id: AlgebraId
    tensor: PrescribedTensor
    report: ConditionReport
    solution: Solution | None
    degenerate: str | None = None  # message of a branch guard that vanished

    @property
    def solvable(self) -> bool:
        return self.solution is not None


def forward_tensor(coeffs: FrameCoefficients, t: float = 1.0) -> PrescribedTensor:
    """Tensor T with Ric(coeffs) = t^2 T."""
    if t == 0:
        raise ValueError("t must be nonzero")
    ric = ricci_nilpotent(frame_structure_constants(coeffs)).m
    return PrescribedTensor(coeffs.id, ric / (t * t))


def verify_solution(algebra_id: AlgebraId, solution: Solution, tensor: PrescribedTensor) -> float:
    """||Ric(solution.coeffs) - t^2 T||_inf."""
    ric = ricci_nilpotent(frame_structure_constants(solution.coeffs)).m
    return float(np.max(np.abs(ric - solution.t**2 * tensor.m)))


def _lstsq(m: np.ndarray, rhs: np.ndarray, tol: Tolerances) -> np.ndarray | None:
    """Least-squares solution, or None when the system is incompatible."""
    y, *_ = linalg.lstsq(m, rhs)
    gap = float(np.max(np.abs(m @ y - rhs)))
    if gap > tol.equality:
        logger.debug(f"Linear-in-squares system incompatible (residual {gap:.3e})")
        return None
    return np.asarray(y)


def _kernel_pin(
    q: np.ndarray, pattern: TensorPattern, kernel: np.ndarray, tol: Tolerances
) -> tuple[int, int, float, tuple[int, int]] | None:
    """
    Find an off-diagonal entry T_ij = c * x_p * x_q where x_p^2 is fixed
    by the diagonal system and x_q^2 moves along the kernel.

    Returns:
        (p, q, c, 0-based (i, j)) or None.
    """
    if kernel.shape[1] != 1:
        return None
    direction = kernel[:, 0]
    for i, j in pattern.cells:
        if i == j:
            continue
        form = q[i - 1, j - 1]
        if np.any(np.abs(np.diag(form)) > tol.zero):
            continue
        pairs = [(p, r) for p, r in itertools.combinations(range(form.shape[0]), 2) if abs(form[p, r]) > tol.zero]
        if len(pairs) != 1:
            continue
        p, r = pairs[0]
        for fixed, free in ((p, r), (r, p)):
            if abs(direction[fixed]) <= tol.zero and abs(direction[free]) > tol.zero:
                return fixed, free, 2.0 * float(form[p, r]), (i - 1, j - 1)
    return None


def _solve_squares(
    algebra_id: AlgebraId, pattern: TensorPattern, names: tuple[str, ...], q: np.ndarray, m: Mat5, tol: Tolerances
) -> np.ndarray | None:
    """Squared coefficients from the diagonal equations, pinning a kernel if there is one."""
    system = np.stack([np.diag(q[i, i]) for i in range(q.shape[0])])
    rhs = np.diag(m).copy()
    y = _lstsq(system, rhs, tol)
    if y is None:
        return None
    kernel = linalg.null_space(system, rcond=tol.zero)
    if kernel.shape[1] == 0:
        return y

    pin = _kernel_pin(q, pattern, kernel, tol)
    if pin is None:
        logger.debug(f"{algebra_id}: kernel of dimension {kernel.shape[1]} cannot be pinned")
        return None
    fixed, free, c, (i, j) = pin
    if y[fixed] < -tol.clamp:
        return None
    if y[fixed] <= tol.clamp:
        raise DegenerateBranchError(algebra_id, f"{names[fixed]}^2 > 0")
    logger.debug(f"{algebra_id}: pinning {names[free]}^2 through T[{i + 1},{j + 1}]")
    row = np.zeros(len(names))
    row[free] = 1.0
    system = np.vstack([system, row])
    rhs = np.append(rhs, (m[i, j] / c) ** 2 / y[fixed])
    y = _lstsq(system, rhs, tol)
    if y is None or linalg.null_space(system, rcond=tol.zero).shape[1] > 0:
        return None
    return y


def _candidates(
    algebra_id: AlgebraId, case: FrameCase, names: tuple[str, ...], squares: np.ndarray, tol: Tolerances
) -> list[FrameCoefficients] | None:
    """Every sign assignment of the square roots that respects the sign domains."""
    pattern = frame_pattern(algebra_id, case)
    options: list[tuple[float, ...]] = []
    for name, y in zip(names, squares, strict=True):
        if y < -tol.clamp:
            logger.debug(f"{algebra_id}: {name}^2 = {y:.3e} is negative")
            return None
        root = float(np.sqrt(max(y, 0.0)))
        domain = pattern.sign(name)
        if domain != "free" and root == 0.0:
            logger.debug(f"{algebra_id}: {name} vanishes but must be {domain}")
            return None
        if domain == "positive":
            options.append((root,))
        elif domain == "negative":
            options.append((-root,))
        else:
            options.append((root, -root) if root > 0 else (0.0,))
    return [
        FrameCoefficients.from_mapping(algebra_id, dict(zip(names, signs, strict=True)), case)
        for signs in itertools.product(*options)
    ]


def _solve_branch(algebra_id: AlgebraId, pattern: TensorPattern, tensor: PrescribedTensor, tol: Tolerances) -> Solution | None:
    all_names, q_full = quadratic_structure(algebra_id, pattern.case)
    family = frame_pattern(algebra_id, pattern.case).family
    idx = [all_names.index(n) for n in family]
    q = q_full[:, :, idx][:, :, :, idx]

    squares = _solve_squares(algebra_id, pattern, family, q, tensor.m, tol)
    if squares is None:
        return None
    candidates = _candidates(algebra_id, pattern.case, family, squares, tol)
    if candidates is None:
        return None

    for coeffs in candidates:
        trial = Solution(algebra_id, coeffs, 1.0, 0.0, algebra_id in SUFFICIENCY_ONLY, pattern.case)
        residual = verify_solution(algebra_id, trial, tensor)
        if residual <= tol.residual:
            logger.debug(f"{algebra_id} ({pattern.case}): verified with residual {residual:.3e}")
            return replace(trial, residual=residual)
    logger.debug(f"{algebra_id} ({pattern.case}): no sign pattern of {len(candidates)} verifies")
    return None


def solve(algebra_id: AlgebraId, tensor: PrescribedTensor, tolerances: Tolerances | None = None) -> Solution | None:
    """
    Find frame coefficients with Ric = T (t = 1).

    Families are tried in order (A4,1+A1: first, then second); the first
    verified candidate wins.

    Returns:
        Solution, or None when no family yields one.

    Raises:
        PatternViolationError: If T fits none of the algebra's shapes.
        DegenerateBranchError: If no family solves and a branch guard vanished.
    """
    tol = tolerances or get_tolerances()
    if tensor.id != algebra_id:
        tensor = PrescribedTensor(algebra_id, tensor.m, tol)
    patterns = tensor.validate(tol)

    if algebra_id == "FiveA1":
        size = float(np.max(np.abs(tensor.m)))
        if size > tol.zero:
            return None
        return Solution(algebra_id, FrameCoefficients.from_mapping(algebra_id, {}), 1.0, size)

    degenerate: DegenerateBranchError | None = None
    for pattern in patterns:
        try:
            solution = _solve_branch(algebra_id, pattern, tensor, tol)
        except DegenerateBranchError as e:
            logger.warning(str(e))
            degenerate = e
            continue
        if solution is not None:
            return solution
    if degenerate is not None:
        raise degenerate
    return None


def solve_report(algebra_id: AlgebraId, tensor: PrescribedTensor, tolerances: Tolerances | None = None) -> SolveResult:
    """Conditions plus solver outcome; a vanishing guard is reported rather than raised."""
    tol = tolerances or get_tolerances()
    report = check_conditions(algebra_id, tensor, tol)
    try:
        solution = solve(algebra_id, tensor, tol)
    except DegenerateBranchError as e:
        return SolveResult(algebra_id, tensor, report, None, str(e))
    if report.satisfied != (solution is not None) and algebra_id not in SUFFICIENCY_ONLY:
        logger.warning(
            f"{algebra_id}: conditions {'pass' if report.satisfied else 'fail'} "
            f"but the solver {'found' if solution else 'found no'} metric"
        )
    return SolveResult(algebra_id, tensor, report, solution)


def solve_batch(
    items: Sequence[tuple[AlgebraId, PrescribedTensor]],
    workers: int = 4,
    tolerances: Tolerances | None = None,
) -> list[SolveResult]:
    """Solve independent tensors concurrently; results keep the input order."""
    tol = tolerances or get_tolerances()
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda item: solve_report(item[0], item[1], tol), items))
