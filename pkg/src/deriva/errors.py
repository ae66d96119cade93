"""Exception hierarchy.

Every error carries a machine-readable ``kind`` string; the CLI maps kinds to
exit codes and copies them into its JSON error objects.
"""

from __future__ import annotations


class DerivaError(ValueError):
    kind = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "message": str(self)}
        for key, value in self.details.items():
            out[key] = value.to_dict() if hasattr(value, "to_dict") else value
        return out


class RingSpecError(DerivaError):
    kind = "invalid-ring"


class ElementError(DerivaError):
    kind = "invalid-element"


class MixedRingError(DerivaError):
    kind = "mixed-rings"


class NotAUnitError(DerivaError, ZeroDivisionError):
    kind = "not-a-unit"


class InfiniteRingError(DerivaError):
    kind = "infinite-ring"


class NotAFieldError(DerivaError):
    kind = "not-a-field"


class HalfUndefinedError(DerivaError):
    """Raised wherever the scalar 1/2 is needed but 2 is not a unit."""

    kind = "half-undefined"


class ExprSyntaxError(DerivaError):
    kind = "syntax-error"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}", position=position)
        self.position = position


class TableFormatError(DerivaError):
    kind = "table-format"


class LengthMismatchError(TableFormatError):
    kind = "length-mismatch"


class DimensionError(DerivaError):
    kind = "dimension-mismatch"


class PreconditionError(DerivaError):
    kind = "precondition"


class BudgetExceededError(DerivaError):
    kind = "budget-exceeded"

    def __init__(self, needed: int, budget: int):
        super().__init__(
            f"enumeration needs {needed} pair checks, budget is {budget}",
            needed=str(needed),
            budget=str(budget),
        )
        self.needed = needed
        self.budget = budget


class NotASolutionError(DerivaError):
    """Input to a constructive solver fails the equation it must satisfy.

    ``report`` is the failing :class:`~deriva.checkers.CheckReport`.
    """

    kind = "not-a-solution"

    def __init__(self, message: str, report):
        super().__init__(message, report=report)
        self.report = report


class InvariantViolationError(DerivaError):
    kind = "invariant-violation"
