"""Exception hierarchy shared by every module."""

from __future__ import annotations

from dataclasses import dataclass


class SemicholError(Exception):
    """Base class for all library errors."""


@dataclass(frozen=True)
class AxiomViolation:
    """One failed axiom instance; ``witness`` holds the offending element indices."""

    axiom: str
    witness: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.axiom} fails at {self.witness}"


class MalformedTable(SemicholError):
    pass


class InvalidSemiring(SemicholError):
    """Raised by validation when at least one axiom instance fails."""

    def __init__(self, violations: list[AxiomViolation]):
        self.violations = list(violations)
        head = ", ".join(str(v) for v in self.violations[:3])
        more = "" if len(self.violations) <= 3 else f" (+{len(self.violations) - 3} more)"
        super().__init__(f"{len(self.violations)} axiom violation(s): {head}{more}")


class NotEnumerable(SemicholError):
    """The operation needs to enumerate the carrier of an infinite semiring."""


class ShapeMismatch(SemicholError):
    pass


class SemiringMismatch(SemicholError):
    pass


class IndexOutOfRange(SemicholError):
    pass


class NotInvertible(SemicholError):
    def __init__(self, message: str, column: int | None = None):
        self.column = column
        super().__init__(message)


class PivotNotInvertible(SemicholError):
    def __init__(self, pivot):
        self.pivot = pivot
        super().__init__(f"pivot {pivot!r} is not multiplicatively invertible")


class SubdiagonalNotNegatable(SemicholError):
    def __init__(self, index: int, value):
        self.index = index
        self.value = value
        super().__init__(f"entry {value!r} at offset {index} has no additive inverse")


class StronglyInvertibleRequired(SemicholError):
    def __init__(self, k: int):
        self.k = k
        super().__init__(f"leading principal submatrix of size {k} is not invertible")


class SearchTooLarge(SemicholError):
    def __init__(self, candidates: int, limit: int):
        self.candidates = candidates
        self.limit = limit
        super().__init__(f"search space of {candidates} candidates exceeds guard {limit}")


class HypothesisNotSatisfied(SemicholError):
    pass


class StructureViolation(SemicholError):
    """A triangular factor has an entry outside U(S) (diagonal) or V(S) (off-diagonal)."""


class CholeskyFailure(SemicholError):
    """Carries the failed :class:`~semichol.factorization.CholeskyResult`."""

    def __init__(self, result):
        self.result = result
        super().__init__(f"no Cholesky factor: {result.describe()}")
