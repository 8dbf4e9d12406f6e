"""Solvability conditions of the prescribed Ricci equation, per algebra.

Each condition list is complete for its frame family: every item passes
exactly when the solver finds a metric. Conditions of the form
"x +/- sqrt(E) = 0" are evaluated as x^2 = E; the joint sign of several
off-diagonal letters is an explicit product condition.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from nilricci.config import Tolerances, get_tolerances
from nilricci.prescribed.patterns import PrescribedTensor, TensorPattern, sparsity_pattern
from nilricci.types import AlgebraId, FrameCase, Mat5


@dataclass(frozen=True)
class ConditionItem:
    """One numbered condition; residual is 0 when satisfied."""

    name: str
    satisfied: bool
    residual: float


@dataclass(frozen=True)
class BranchReport:
    """Conditions of one frame family."""

    case: FrameCase
    items: list[ConditionItem]
    derived: dict[str, float] = field(default_factory=dict)
    pattern_matches: bool = True

    @property
    def satisfied(self) -> bool:
        return self.pattern_matches and all(item.satisfied for item in self.items)


@dataclass(frozen=True)
class ConditionReport:
    """Conditions of every family of an algebra; solvable when any family passes."""

    id: AlgebraId
    branches: list[BranchReport]

    @property
    def satisfied(self) -> bool:
        return any(b.satisfied for b in self.branches)

    @property
    def items(self) -> list[ConditionItem]:
        """All items; names carry the family when the algebra has several."""
        if len(self.branches) == 1:
            return list(self.branches[0].items)
        return [
            ConditionItem(f"{b.case}: {item.name}", item.satisfied, item.residual)
            for b in self.branches
            for item in b.items
        ]

    @property
    def derived_quantities(self) -> dict[str, float]:
        if len(self.branches) == 1:
            return dict(self.branches[0].derived)
        return {f"{b.case}: {k}": v for b in self.branches for k, v in b.derived.items()}


class _Checks:
    """Accumulates condition items with the configured tolerances."""

    def __init__(self, tol: Tolerances) -> None:
        self.tol = tol
        self.items: list[ConditionItem] = []
        self._count = 0

    def _add(self, label: str, satisfied: bool, residual: float) -> None:
        self._count += 1
        self.items.append(ConditionItem(f"({self._count}) {label}", satisfied, 0.0 if satisfied else residual))

    def undetermined(self, label: str) -> None:
        self._add(label, False, math.inf)

    def vanishes(self, label: str, value: float) -> None:
        self._add(label, abs(value) <= self.tol.zero, abs(value))

    def equal(self, label: str, value: float) -> None:
        self._add(label, abs(value) <= self.tol.equality, abs(value))

    def square(self, label: str, x: float, target: float) -> None:
        self.equal(label, x * x - target)

    def positive(self, label: str, value: float) -> None:
        self._add(label, value > self.tol.zero, self.tol.zero - value)

    def negative(self, label: str, value: float) -> None:
        self._add(label, value < -self.tol.zero, value + self.tol.zero)

    def nonnegative(self, label: str, value: float) -> None:
        self._add(label, value >= -self.tol.zero, -value)

    def nonpositive(self, label: str, value: float) -> None:
        self._add(label, value <= self.tol.zero, value)


Letters = dict[str, float]
ConditionFn = Callable[[Letters, Mat5, _Checks], dict[str, float]]


def _five_a1(t: Letters, m: Mat5, chk: _Checks) -> dict[str, float]:
    chk.vanishes("T=0", float(np.max(np.abs(m))))
    return {}


def _a54(t: Letters, m: Mat5, chk: _Checks) -> dict[str, float]:
    a, b, c, d, e, f, l = (t[k] for k in "abcdefl")
    chk.equal("a+b+e=0", a + b + e)
    chk.negative("b<0", b)
    chk.negative("d<0", d)
    chk.nonnegative("b-c>=0", b - c)
    chk.square("f^2=-b(b-c)", f, -b * (b - c))
    chk.square("l^2=-d(b-c)", l, -d * (b - c))
    # erratum cond-a54-joint
    chk.equal("c+d+e=0", c + d + e)
    chk.nonnegative("f*l>=0", f * l)
    return {}


def _a31(t: Letters, m: Mat5, chk: _Checks) -> dict[str, float]:
    a, b, c = t["a"], t["b"], t["c"]
    chk.negative("a<0", a)
    chk.equal("a=b=-c", max(abs(a - b), abs(b + c)))
    return {}


def _a41_first(t: Letters, m: Mat5, chk: _Checks) -> dict[str, float]:
    a, b, c, d, e, f = (t[k] for k in "abcdef")
    big_a, big_b, big_c = a - 2 * b - c, b - a, a + d
    chk.equal("b+c+d=0", b + c + d)
    chk.nonnegative("A>=0", big_a)
    chk.positive("B>0", big_b)
    chk.negative("C<0", big_c)
    chk.square("e^2=AB", e, big_a * big_b)
    chk.square("f^2=-AC", f, -big_a * big_c)
    # erratum cond-a41-joint
    chk.nonpositive("e*f<=0", e * f)
    return {"A": big_a, "B": big_b, "C": big_c}


def _a41_second(t: Letters, m: Mat5, chk: _Checks) -> dict[str, float]:
    # erratum cond-a41-second
    a, b, c, d, e, f = (t[k] for k in "abcdef")
    chk.equal("b+c+d+e=0", b + c + d + e)
    chk.equal("b-a-e=0", b - a - e)
    chk.nonnegative("d>=0", d)
    chk.positive("e>0", e)
    chk.negative("b+d<0", b + d)
    chk.square("f^2=-d(b+d)", f, -d * (b + d))
    return {}


def _a56(t: Letters, m: Mat5, chk: _Checks) -> dict[str, float]:
    # erratum cond-a56-rederived
    a, b, c, d, e, f, g, h, i = (t[k] for k in "abcdefghi")
    big_p = -(b + c + d + e)
    big_q = -(a + b + 2 * c + 2 * d + 3 * e)
    derived = {"P": big_p, "Q": big_q}
    chk.positive("P>0", big_p)
    chk.positive("Q>0", big_q)
    if big_p <= chk.tol.zero or big_q <= chk.tol.zero:
        for label in ("E>0", "A>0", "B>=0", "g^2=BQ", "i+f*sqrt(Q/P)=0", "h-f*sqrt(E/P)-g*sqrt(A/Q)=0"):
            chk.undetermined(label)
        return derived
    big_f = f * f / big_p
    big_e = b + c + d + 2 * e - big_f
    big_a = -(a + 2 * b + 2 * c + 3 * d + 4 * e) + big_f
    big_b = a + 2 * b + 3 * c + 4 * d + 5 * e - big_f
    derived.update({"F": big_f, "E": big_e, "A": big_a, "B": big_b})
    chk.positive("E>0", big_e)
    chk.positive("A>0", big_a)
    chk.nonnegative("B>=0", big_b)
    chk.square("g^2=BQ", g, big_b * big_q)
    chk.equal("i+f*sqrt(Q/P)=0", i + f * math.sqrt(big_q / big_p))
    root_e = math.sqrt(max(big_e, 0.0) / big_p)
    root_a = math.sqrt(max(big_a, 0.0) / big_q)
    chk.equal("h-f*sqrt(E/P)-g*sqrt(A/Q)=0", h - f * root_e - g * root_a)
    return derived


def _a55(t: Letters, m: Mat5, chk: _Checks) -> dict[str, float]:
    # erratum cond-a55-d-e
    a, b, c, d, e = (t[k] for k in "abcde")
    f, l, h, i, j, k = (t[x] for x in "flhijk")
    big_a = -(a + b + c + 2 * d + 2 * e)
    big_b = a + d + e
    big_c = -(a + c + d + e)
    big_d = a + b + 2 * c + 2 * d + 3 * e
    big_e = -(a + b + c + d + 2 * e)
    chk.positive("A>0", big_a)
    chk.nonnegative("B>=0", big_b)
    chk.positive("C>0", big_c)
    chk.nonnegative("D>=0", big_d)
    chk.positive("E>0", big_e)
    chk.square("f^2=BC", f, big_b * big_c)
    chk.square("l^2=BD", l, big_b * big_d)
    chk.square("h^2=AD", h, big_a * big_d)
    chk.square("i^2=CD", i, big_c * big_d)
    chk.square("j^2=AB", j, big_a * big_b)
    chk.square("k^2=DE", k, big_d * big_e)
    chk.nonnegative("h*k>=0", h * k)
    chk.nonpositive("h*i<=0", h * i)
    chk.nonnegative("f*j>=0", f * j)
    chk.nonpositive("f*h*l<=0", f * h * l)
    return {"A": big_a, "B": big_b, "C": big_c, "D": big_d, "E": big_e}


def _a53(t: Letters, m: Mat5, chk: _Checks) -> dict[str, float]:
    # erratum cond-a53-l
    a, b, c, d, e, f, l, h, i = (t[k] for k in "abcdeflhi")
    big_a = -(b + c + d + e)
    big_b = b + c + d + 2 * e
    big_c = -(a + b + 2 * c + 2 * d + 3 * e)
    big_d = a + b + 2 * c + 3 * d + 3 * e
    big_e = -(a + b + c + 2 * d + 2 * e)
    chk.positive("A>0", big_a)
    chk.nonnegative("B>=0", big_b)
    chk.positive("C>0", big_c)
    chk.nonnegative("D>=0", big_d)
    chk.positive("E>0", big_e)
    chk.square("f^2=AB", f, big_a * big_b)
    chk.square("l^2=CD", l, big_c * big_d)
    chk.square("h^2=DE", h, big_d * big_e)
    chk.square("i^2=BC", i, big_b * big_c)
    chk.nonpositive("h*l<=0", h * l)
    chk.nonpositive("f*i<=0", f * i)
    return {"A": big_a, "B": big_b, "C": big_c, "D": big_d, "E": big_e}


def _a51(t: Letters, m: Mat5, chk: _Checks) -> dict[str, float]:
    # erratum cond-a51-trace
    a, b, c, d, e, f, l = (t[k] for k in "abcdefl")
    chk.equal("a-b-c=0", a - b - c)
    chk.equal("b+c+d+e=0", b + c + d + e)
    chk.positive("d>0", d)
    chk.negative("c<0", c)
    chk.nonpositive("b+d<=0", b + d)
    chk.square("f^2=c(b+d)", f, c * (b + d))
    chk.square("l^2=-d(b+d)", l, -d * (b + d))
    chk.nonpositive("f*l<=0", f * l)
    return {}


def _a52(t: Letters, m: Mat5, chk: _Checks) -> dict[str, float]:
    a, b, c, d, e, f, l = (t[k] for k in "abcdefl")
    big_a = a - b + e
    big_b = a - b + d + 2 * e
    big_c = a + d + 2 * e
    chk.equal("b+c+d+e=0", b + c + d + e)
    chk.positive("e>0", e)
    chk.negative("A<0", big_a)
    chk.nonnegative("B>=0", big_b)
    chk.negative("C<0", big_c)
    chk.square("f^2=-AB", f, -big_a * big_b)
    chk.square("l^2=-BC", l, -big_b * big_c)
    # erratum cond-a52-joint
    chk.nonpositive("f*l<=0", f * l)
    return {"A": big_a, "B": big_b, "C": big_c}


CONDITIONS: dict[tuple[AlgebraId, FrameCase], ConditionFn] = {
    ("FiveA1", "main"): _five_a1,
    ("A54", "main"): _a54,
    ("A31plus2A1", "main"): _a31,
    ("A41plusA1", "first"): _a41_first,
    ("A41plusA1", "second"): _a41_second,
    ("A56", "main"): _a56,
    ("A55", "main"): _a55,
    ("A53", "main"): _a53,
    ("A51", "main"): _a51,
    ("A52", "main"): _a52,
}


def check_branch(pattern: TensorPattern, tensor: PrescribedTensor, tolerances: Tolerances) -> BranchReport:
    """Evaluate the conditions of one family (the tensor is read through its pattern)."""
    chk = _Checks(tolerances)
    derived = CONDITIONS[(pattern.id, pattern.case)](pattern.read(tensor.m), tensor.m, chk)
    matches = pattern.violation(tensor.m, tolerances.zero) is None
    return BranchReport(pattern.case, chk.items, derived, matches)


def check_conditions(
    algebra_id: AlgebraId, tensor: PrescribedTensor, tolerances: Tolerances | None = None
) -> ConditionReport:
    """
    Evaluate every solvability condition of an algebra.

    Raises:
        PatternViolationError: If the tensor fits none of the algebra's shapes.
    """
    tol = tolerances or get_tolerances()
    if tensor.id != algebra_id:
        tensor = PrescribedTensor(algebra_id, tensor.m, tol)
    tensor.validate(tol)
    return ConditionReport(algebra_id, [check_branch(p, tensor, tol) for p in sparsity_pattern(algebra_id)])
