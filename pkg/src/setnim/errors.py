"""Exception hierarchy shared by the whole package.

Every error carries a stable machine-readable ``code`` so the CLI and the
HTTP service can map failures without string matching.
"""

from __future__ import annotations


class SetNimError(Exception):
    """Base class for all domain errors."""

    code = "Error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class EmptySetError(SetNimError):
    code = "EmptySet"


class IndexOutOfRangeError(SetNimError):
    code = "IndexOutOfRange"


class CoverageGapError(SetNimError):
    """The union of the move sets does not cover every vertex."""

    code = "CoverageGap"

    def __init__(self, missing):
        self.missing = tuple(sorted(missing))
        super().__init__(f"move sets never touch vertices {list(self.missing)}")


class UnknownIdError(SetNimError):
    code = "UnknownId"


class BadParametersError(SetNimError):
    code = "BadParameters"


class FileFormatError(SetNimError):
    code = "FileFormatError"


class DimensionMismatchError(SetNimError):
    code = "DimensionMismatch"


class NegativeResultError(SetNimError):
    code = "NegativeResult"


class TooLargeError(SetNimError):
    code = "TooLarge"


class NonZeroVertexError(SetNimError):
    code = "NonZeroVertex"


class EmptyResultError(SetNimError):
    code = "EmptyResult"


class PreconditionViolatedError(SetNimError):
    code = "PreconditionViolated"


class NegativeHeightError(SetNimError):
    code = "NegativeHeight"


class IllegalReducedMoveError(SetNimError):
    code = "IllegalReducedMove"


class BudgetExceededError(SetNimError):
    """A work cap was hit.  Never a wrong answer, always a clean stop."""

    code = "BudgetExceeded"


class UnsupportedParametersError(SetNimError):
    code = "UnsupportedParameters"


class UnsupportedGameError(SetNimError):
    code = "UnsupportedGame"


class NoCaseMatchedError(SetNimError):
    """A case table failed to classify a reduced position.

    Signals an internal invariant violation; reaching this is a bug in the
    table, not bad user input.
    """

    code = "NoCaseMatched"


class NotPointedError(SetNimError):
    code = "NotPointed"
