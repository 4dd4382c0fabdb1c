"""Rightmost reduced subexpressions and the good-pair certificate.

For v <= w and a fixed reduced word of w, the rightmost reduced
subexpression spelling v is unique; its position set is the object
everything in the matching machinery is phrased in.  The good-pair test
is the combinatorial regularity certificate for a codimension-1 face:
the two position sets differ by one index k and the larger cell already
uses every position after k.

>>> from .coxeter import coxeter_system
>>> W = coxeter_system("A2")
>>> sub = positive_subexpression(W.gen(1), (1, 2, 1))
>>> sub.positions
(3,)
>>> sub.complement
(1, 2)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .bruhat import rightmost_positions
from .coxeter import GroupElement, Word
from .errors import (
    NotACover,
    NotComparable,
    SystemMismatch,
    WordMismatch,
    WordNotReduced,
)

__all__ = [
    "Subexpression",
    "positive_subexpression",
    "complement",
    "brute_force_rightmost",
    "satisfies_ascent_property",
    "is_good_pair",
]

BRUTE_FORCE_CAP = 14


@dataclass(frozen=True)
class Subexpression:
    """A reduced subexpression of ``host_word`` at ``positions`` (1-based)."""

    host_word: Word
    positions: Word
    value: GroupElement

    @property
    def complement(self) -> Word:
        chosen = set(self.positions)
        return tuple(
            j for j in range(1, len(self.host_word) + 1) if j not in chosen
        )

    def letters(self) -> Word:
        return tuple(self.host_word[j - 1] for j in self.positions)


@lru_cache(maxsize=None)
def positive_subexpression(v: GroupElement, w_word: Word) -> Subexpression:
    """The rightmost reduced subexpression for v inside the reduced word
    ``w_word``; greedy right-to-left selection.
    """
    sys = v.system
    if not sys.is_reduced(w_word):
        raise WordNotReduced(f"{w_word} is not reduced")
    positions = rightmost_positions(v, w_word)
    if positions is None:
        raise NotComparable(f"{v!r} is not below the value of {w_word}")
    return Subexpression(tuple(w_word), positions, v)


def complement(sub: Subexpression) -> Word:
    return sub.complement


def brute_force_rightmost(v: GroupElement, w_word: Word) -> Word | None:
    """Independent oracle: enumerate all reduced subexpressions for v and
    take the rightmost one (max positions compared last-to-first).

    Exponential in len(w_word); refuses words longer than the cap.
    """
    sys = v.system
    m = len(w_word)
    if m > BRUTE_FORCE_CAP:
        raise ValueError(f"brute force capped at words of length {BRUTE_FORCE_CAP}")
    best: Word | None = None
    for posn in combinations(range(1, m + 1), v.length):
        if sys.element(tuple(w_word[j - 1] for j in posn)) == v:
            if best is None or tuple(reversed(posn)) > tuple(reversed(best)):
                best = posn
    return best


def satisfies_ascent_property(sub: Subexpression) -> bool:
    """The defining ascent property of positive subexpressions: after the
    first l selected letters, multiplying by any host letter strictly
    between selections (positions j_l < r <= j_{l+1}) goes up in length.
    """
    sys = sub.value.system
    word, positions = sub.host_word, sub.positions
    bounds = positions + (len(word),)
    prefix = sys.identity
    for l, j in enumerate(positions):
        prefix = prefix.times_gen(word[j - 1])
        for r in range(j + 1, bounds[l + 1] + 1):
            if prefix.times_gen(word[r - 1]).length <= prefix.length:
                return False
    return True


def is_good_pair(cell_lo, cell_hi, w_word: Word) -> bool:
    """Goodness of the codimension-1 pair cell_lo <. cell_hi sharing third
    component w, relative to the reduced word ``w_word`` for w.

    True iff the lower cell's position set equals the upper's plus a single
    index k, and the upper cell already uses every position after k.
    """
    from .cells import q_leq  # runtime import; cells does not import back

    if cell_lo.is_bottom or cell_hi.is_bottom:
        raise NotACover("the bottom sentinel does not form good pairs")
    if cell_lo.parabolic is not cell_hi.parabolic:
        raise SystemMismatch("cells from different Q posets")
    if cell_lo.w != cell_hi.w:
        raise WordMismatch("cells do not share their third component")
    sys = cell_hi.w.system
    if not sys.is_reduced(w_word):
        raise WordNotReduced(f"{w_word} is not reduced")
    if sys.element(w_word) != cell_hi.w:
        raise WordMismatch(f"{w_word} does not spell the shared w")
    if cell_hi.dim != cell_lo.dim + 1 or not q_leq(cell_lo, cell_hi):
        raise NotACover(f"{cell_lo!r} is not covered by {cell_hi!r}")
    upper = set(
        positive_subexpression(cell_hi.x * cell_hi.u.inverse(), w_word).positions
    )
    lower = set(
        positive_subexpression(cell_lo.x * cell_lo.u.inverse(), w_word).positions
    )
    extra = lower - upper
    if not (upper <= lower and len(extra) == 1):
        return False
    k = extra.pop()
    return upper >= set(range(k + 1, len(w_word) + 1))


if __name__ == "__main__":
    import doctest

    doctest.testmod()
