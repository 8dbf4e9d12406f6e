"""Exceptions raised by nilricci.

Every exception is a ``ValueError`` so callers that only care about bad input
can catch that; the subclasses carry the detail the CLI reports.
"""


class NilRicciError(ValueError):
    """Base class for all nilricci errors."""


class UnknownAlgebraError(NilRicciError):
    """Raised when an algebra id cannot be resolved."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(
            f"Unknown algebra '{name}'. Known: 5A1, A5,4, A3,1+2A1, A4,1+A1, "
            "A5,6, A5,5, A5,3, A5,1, A5,2"
        )


class SingularMatrixError(NilRicciError):
    """Raised when a matrix that must be invertible is (numerically) singular."""

    def __init__(self, what: str, det: float) -> None:
        self.det = det
        super().__init__(f"{what} is singular (|det| = {abs(det):.3e})")


class NotPositiveDefiniteError(NilRicciError):
    """Raised when a Gram matrix is not symmetric positive-definite."""

    def __init__(self, minor: int, value: float) -> None:
        self.minor = minor
        self.value = value
        super().__init__(
            f"Gram matrix is not positive-definite: leading minor {minor} = {value:.6e}"
        )


class PatternViolationError(NilRicciError):
    """Raised when a matrix or tensor has a nonzero entry outside its pattern."""

    def __init__(self, position: tuple[int, ...], magnitude: float, context: str) -> None:
        self.position = position
        self.magnitude = magnitude
        label = ",".join(str(p + 1) for p in position)
        super().__init__(
            f"{context}: entry ({label}) = {magnitude:.3e} lies outside the allowed pattern"
        )


class SignDomainError(NilRicciError):
    """Raised when a frame coefficient violates its sign domain."""

    def __init__(self, name: str, value: float, domain: str) -> None:
        self.name = name
        self.value = value
        super().__init__(f"Coefficient {name} = {value!r} violates sign domain '{domain}'")


class UnknownEntryError(NilRicciError):
    """Raised when a named parameter or coefficient does not exist for an algebra."""

    def __init__(self, name: str, allowed: tuple[str, ...]) -> None:
        self.name = name
        super().__init__(f"Unknown entry '{name}'. Allowed: {', '.join(allowed)}")


class ReductionError(NilRicciError):
    """Raised when a reduction fails its internal consistency check."""

    def __init__(self, message: str, residual: float) -> None:
        self.residual = residual
        super().__init__(f"{message} (residual {residual:.3e})")


class DegenerateBranchError(NilRicciError):
    """Raised when a solver branch guard cannot be evaluated (division by zero)."""

    def __init__(self, algebra: str, guard: str) -> None:
        self.algebra = algebra
        self.guard = guard
        super().__init__(f"{algebra}: degenerate branch, guard '{guard}' vanishes")
