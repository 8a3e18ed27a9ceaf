"""Exception hierarchy.

Every error carries a stable ``code`` (the class name) so the CLI can turn
it into a diagnostic without string matching.
"""

from __future__ import annotations


class DatumError(Exception):
    @property
    def code(self) -> str:
        return type(self).__name__


# alphabet construction
class EmptyAlphabet(DatumError):
    pass


class MixedDimension(DatumError):
    pass


class DuplicateMember(DatumError):
    pass


# evaluation: a character was not acceptable to an operation
class ProcessingError(DatumError):
    pass


class ArityMismatch(ProcessingError):
    pass


class DomainViolation(ProcessingError):
    pass


class UndefinedInput(ProcessingError):
    """A table has no row for the given arguments."""


# evaluation: the bounded stand-ins for unbounded sets ran out of room
class RangeLimit(DatumError):
    pass


class OutOfRange(RangeLimit):
    pass


class SuccessorOverflow(OutOfRange):
    pass


class MuDivergence(RangeLimit):
    pass


class BudgetExhausted(DatumError):
    pass


class ClosureCapExceeded(BudgetExhausted):
    def __init__(self, message: str, partial: list) -> None:
        super().__init__(message)
        self.partial = partial


# construction of operations, curried operations and types
class SignatureMismatch(DatumError):
    pass


class IndexOutOfRange(DatumError):
    pass


class NotASubAlphabet(DatumError):
    pass


class EmptyWitness(DatumError):
    pass


class FocalDomainMismatch(DatumError):
    pass


# subtyping and graphs
class KindMismatch(DatumError):
    pass


class SubtypeRejected(DatumError):
    def __init__(self, message: str, report) -> None:
        super().__init__(message)
        self.report = report


class UnknownNode(DatumError):
    pass


class UnverifiedEdge(DatumError):
    pass


class DuplicateEdge(DatumError):
    pass


class UnsupportedFormat(DatumError):
    pass


class NoPath(DatumError):
    pass
