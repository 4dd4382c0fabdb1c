"""Exception types shared across the package.

Every error raised deliberately by this package derives from
:class:`TnnMorseError`, so callers can catch one base class.  Errors that
"must never fire" (they certify structural theorems, e.g.
:class:`UnclassifiableCover`) are still real exceptions: if the underlying
mathematics were wrong, we want a hard failure, not a silent repair.
"""

from __future__ import annotations

__all__ = [
    "TnnMorseError",
    "UnknownType",
    "RankOutOfRange",
    "GroupTooLarge",
    "SystemMismatch",
    "WordTooLong",
    "NotComparable",
    "NotGraded",
    "NotGradedBounded",
    "WordNotReduced",
    "NotReduced",
    "NotACover",
    "WordMismatch",
    "NotLongestElement",
    "NotEL",
    "MatchingConflict",
    "ZeroDimensional",
    "UnclassifiableCover",
    "ComplexTooLarge",
]


class TnnMorseError(Exception):
    """Base class for all package errors."""


class UnknownType(TnnMorseError):
    """Type label is not one of the supported Coxeter types."""


class RankOutOfRange(TnnMorseError):
    """Rank is invalid for the given type letter."""


class GroupTooLarge(TnnMorseError):
    """Group order would exceed the configured enumeration cap."""


class SystemMismatch(TnnMorseError):
    """Operands belong to different Coxeter systems."""


class WordTooLong(TnnMorseError):
    """Word length exceeds the configured cap for exhaustive expansion."""


class NotComparable(TnnMorseError):
    """Two elements are not related in Bruhat order."""


class NotGraded(TnnMorseError):
    """Poset covers do not connect adjacent ranks."""


class NotGradedBounded(TnnMorseError):
    """Poset is not graded with unique minimum and maximum."""


class WordNotReduced(TnnMorseError):
    """A word required to be reduced is not."""


class NotReduced(TnnMorseError):
    """Alias situation of :class:`WordNotReduced` used by reflection orders."""


class NotACover(TnnMorseError):
    """A pair of cells required to be a cover relation is not."""


class WordMismatch(TnnMorseError):
    """A supplied word does not evaluate to the required group element."""


class NotLongestElement(TnnMorseError):
    """A word required to spell the longest element does not."""


class NotEL(TnnMorseError):
    """An edge labeling fails the EL property where it is required."""


class MatchingConflict(TnnMorseError):
    """A cell would be matched twice; signals violated assumptions."""


class ZeroDimensional(TnnMorseError):
    """Boundary requested for a 0-dimensional cell."""


class UnclassifiableCover(TnnMorseError):
    """A cover fits none of the three cover types; signals a bug."""


class ComplexTooLarge(TnnMorseError):
    """Simplex count would exceed the configured cap."""
