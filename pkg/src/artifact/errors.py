"""Exception hierarchy.

``InputError`` subclasses map to CLI exit code 2, ``CheckFailure`` to 1 and
``ResourceCap`` to 3.
"""

from __future__ import annotations

__all__ = [
    "ArtifactError",
    "InputError",
    "ParseError",
    "NotTwoRegular",
    "FNotCompatible",
    "MalformedPermutation",
    "InvalidTData",
    "ParameterOutOfRange",
    "PreconditionFailed",
    "NonComposableWord",
    "NotPresiltingInput",
    "CheckFailure",
    "LengthBoundExceeded",
    "DimensionMismatch",
    "CentralityFailed",
    "TruncationUnstable",
    "PullbackRankMismatch",
    "NotInPullback",
    "IdempotentLiftDivergence",
    "ApproximationNotFound",
    "ResultNotPresilting",
    "CorrectionUnsolvable",
    "ResourceCap",
    "NodeCapExceeded",
]


class ArtifactError(Exception):
    """Base class of every error raised by the package."""


class InputError(ArtifactError):
    pass


class ParseError(InputError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = "" if line is None else f"line {line}" + ("" if col is None else f", column {col}") + ": "
        super().__init__(where + msg)
        self.line = line
        self.col = col


class NotTwoRegular(InputError):
    pass


class FNotCompatible(InputError):
    pass


class MalformedPermutation(InputError):
    pass


class InvalidTData(InputError):
    pass


class ParameterOutOfRange(InputError):
    pass


class PreconditionFailed(InputError):
    pass


class NonComposableWord(InputError):
    pass


class NotPresiltingInput(InputError):
    pass


class CheckFailure(ArtifactError):
    pass


class LengthBoundExceeded(CheckFailure):
    pass


class DimensionMismatch(CheckFailure):
    pass


class CentralityFailed(CheckFailure):
    pass


class TruncationUnstable(CheckFailure):
    pass


class PullbackRankMismatch(CheckFailure):
    pass


class NotInPullback(CheckFailure):
    pass


class IdempotentLiftDivergence(CheckFailure):
    pass


class ApproximationNotFound(CheckFailure):
    pass


class ResultNotPresilting(CheckFailure):
    pass


class CorrectionUnsolvable(CheckFailure):
    pass


class ResourceCap(ArtifactError):
    pass


class NodeCapExceeded(ResourceCap):
    pass
