"""Bruhat order: comparisons, covers, intervals, thinness, deletion pairs.

The one comparison algorithm used everywhere is the greedy right-to-left
subword scan against a fixed reduced word of the larger element; the
positions it selects are exactly the rightmost reduced subexpression,
which the subexpression module reuses.

>>> from .coxeter import coxeter_system
>>> W = coxeter_system("A2")
>>> s1, s2 = W.generators
>>> bruhat_leq(s1, s1 * s2)
True
>>> bruhat_leq(s1, s2)
False
>>> [v.word for v in covers(W.longest)]
[(1, 2), (2, 1)]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .coxeter import CoxeterSystem, GroupElement, Word
from .errors import (
    NotComparable,
    NotGraded,
    SystemMismatch,
    WordNotReduced,
)

__all__ = [
    "HassePoset",
    "BruhatInterval",
    "bruhat_leq",
    "leq_matrix",
    "covers",
    "interval",
    "is_thin",
    "find_deletion_pairs",
    "check_gamma_reduced",
    "rightmost_positions",
]

_MATRIX_CAP = 5_000  # above this, fall back to per-pair scans


def rightmost_positions(v: GroupElement, word: Word) -> Word | None:
    """Positions (1-based, ascending) of the rightmost reduced subexpression
    for v inside ``word``, or None when v is not below the word's value.

    Scans right to left, absorbing a letter into the running remainder
    whenever that shortens it; v <= w holds iff the remainder empties.
    """
    sys = v.system
    z = v.index
    chosen: list[int] = []
    rdesc, rmult = sys._rdesc, sys._rmult
    for r in range(len(word) - 1, -1, -1):
        i = word[r] - 1
        if rdesc[z, i]:
            z = int(rmult[z, i])
            chosen.append(r + 1)
    if z != 0:
        return None
    chosen.reverse()
    return tuple(chosen)


def bruhat_leq(v: GroupElement, w: GroupElement) -> bool:
    """True iff v <= w in Bruhat order."""
    if v.system is not w.system:
        raise SystemMismatch("Bruhat comparison across different systems")
    if v.length > w.length:
        return False
    return rightmost_positions(v, w.word) is not None


def leq_matrix(system: CoxeterSystem) -> np.ndarray:
    """Boolean matrix M with M[v, w] = (v <= w), cached on the system.

    Built by running the greedy scan for each column w, vectorized over
    all candidates v at once.
    """
    cached = getattr(system, "_bruhat_matrix", None)
    if cached is not None:
        return cached
    order = system.group_order
    if order > _MATRIX_CAP:
        raise MemoryError(
            f"|W| = {order} is above the dense comparison-matrix cap"
        )
    rdesc, rmult, nf = system._rdesc, system._rmult, system._nf
    mat = np.zeros((order, order), dtype=bool)
    everyone = np.arange(order, dtype=np.int64)
    for w in range(order):
        z = everyone.copy()
        for r in range(len(nf[w]) - 1, -1, -1):
            i = nf[w][r] - 1
            mask = rdesc[z, i]
            z[mask] = rmult[z[mask], i]
        mat[:, w] = z == 0
    mat.setflags(write=False)
    system._bruhat_matrix = mat
    return mat


def covers(w: GroupElement) -> list[GroupElement]:
    """All v covered by w; each is w*t for a reflection t, one length down."""
    sys = w.system
    out = [
        v
        for t in sys.reflections()
        if (v := w * t.element).length == w.length - 1
    ]
    out.sort(key=lambda v: v.word)
    return out


class HassePoset:
    """A finite graded poset given by elements, integer ranks and covers.

    ``covers`` holds index pairs (lower, upper); every cover must connect
    adjacent ranks, otherwise :class:`NotGraded` is raised.  Order queries
    go through cached reachability bitmasks, so a built poset is cheap to
    interrogate and safe to share.
    """

    def __init__(self, elements: Sequence, ranks: Sequence[int],
                 covers: Iterable[tuple[int, int]]):
        self.elements = tuple(elements)
        self.ranks = tuple(int(r) for r in ranks)
        if len(self.elements) != len(self.ranks):
            raise ValueError("elements and ranks differ in length")
        self.covers = frozenset((int(a), int(b)) for a, b in covers)
        n = len(self.elements)
        up: list[list[int]] = [[] for _ in range(n)]
        down: list[list[int]] = [[] for _ in range(n)]
        for a, b in self.covers:
            if self.ranks[b] != self.ranks[a] + 1:
                raise NotGraded(
                    f"cover {a}->{b} joins ranks "
                    f"{self.ranks[a]} and {self.ranks[b]}"
                )
            up[a].append(b)
            down[b].append(a)
        self._up = tuple(tuple(sorted(v)) for v in up)
        self._down = tuple(tuple(sorted(v)) for v in down)
        self._up_masks: list[int] | None = None
        self._down_masks: list[int] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def rank_of(self, i: int) -> int:
        return self.ranks[i]

    def upper_covers(self, i: int) -> tuple[int, ...]:
        return self._up[i]

    def lower_covers(self, i: int) -> tuple[int, ...]:
        return self._down[i]

    def indices_by_rank(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, r in enumerate(self.ranks):
            out.setdefault(r, []).append(i)
        return out

    def _masks(self) -> tuple[list[int], list[int]]:
        if self._up_masks is None:
            n = len(self.elements)
            order = sorted(range(n), key=self.ranks.__getitem__)
            ups = [0] * n
            for i in reversed(order):
                m = 1 << i
                for j in self._up[i]:
                    m |= ups[j]
                ups[i] = m
            downs = [0] * n
            for i in order:
                m = 1 << i
                for j in self._down[i]:
                    m |= downs[j]
                downs[i] = m
            self._up_masks, self._down_masks = ups, downs
        return self._up_masks, self._down_masks

    def leq(self, i: int, j: int) -> bool:
        ups, _ = self._masks()
        return bool(ups[i] >> j & 1)

    def interval_indices(self, i: int, j: int) -> list[int]:
        """All z with i <= z <= j, ascending by index."""
        ups, downs = self._masks()
        mask = ups[i] & downs[j]
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def strict_upper(self, i: int) -> list[int]:
        ups, _ = self._masks()
        mask = ups[i] & ~(1 << i)
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def minimal_indices(self) -> list[int]:
        return [i for i in range(len(self.elements)) if not self._down[i]]

    def maximal_indices(self) -> list[int]:
        return [i for i in range(len(self.elements)) if not self._up[i]]

    def dual(self) -> HassePoset:
        top = max(self.ranks, default=0)
        return HassePoset(
            self.elements,
            [top - r for r in self.ranks],
            [(b, a) for a, b in self.covers],
        )


@dataclass
class BruhatInterval:
    """The closed Bruhat interval [bottom, top] with its Hasse diagram.

    ``poset`` ranks are the group lengths; ``poset.elements`` are the
    group elements themselves, sorted by (length, word).
    """

    system: CoxeterSystem
    bottom: GroupElement
    top: GroupElement
    poset: HassePoset = field(repr=False)

    def index_of(self, w: GroupElement) -> int:
        return self.poset.elements.index(w)

    def __len__(self) -> int:
        return len(self.poset)


def interval(v: GroupElement, w: GroupElement) -> BruhatInterval:
    """Build [v, w]; filters the whole group, which is fine at this scale."""
    sys = v.system
    if not bruhat_leq(v, w):
        raise NotComparable(f"{v!r} is not below {w!r}")
    if sys.group_order <= _MATRIX_CAP:
        mat = leq_matrix(sys)
        member = mat[v.index, :] & mat[:, w.index]
        elems = [sys._el(int(i)) for i in np.nonzero(member)[0]]
    else:
        elems = [
            z for z in sys.elements() if bruhat_leq(v, z) and bruhat_leq(z, w)
        ]
    elems.sort(key=lambda z: (z.length, z.word))
    pos = {z.index: k for k, z in enumerate(elems)}
    ranks = [z.length for z in elems]
    edges = []
    for k, z in enumerate(elems):
        if z == v:
            continue
        for c in covers(z):
            j = pos.get(c.index)
            if j is not None:
                edges.append((j, k))
    return BruhatInterval(sys, v, w, HassePoset(elems, ranks, edges))


def is_thin(poset: HassePoset) -> tuple[bool, tuple[int, int, int] | None]:
    """Check that every rank-2 interval has exactly 2 middle elements.

    Returns (True, None) or (False, (lower, upper, middle_count)) with the
    first violation in index order.
    """
    n = len(poset)
    for b in range(n):
        middles: dict[int, int] = {}
        for z in poset.lower_covers(b):
            for a in poset.lower_covers(z):
                middles[a] = middles.get(a, 0) + 1
        for a in sorted(middles):
            if middles[a] != 2:
                return False, (a, b, middles[a])
    return True, None


def _reduced_range_table(system: CoxeterSystem, word: Word) -> list[list[bool]]:
    """red[a][b] = word[a:b] is reduced, for 0 <= a <= b <= len(word)."""
    m = len(word)
    red = [[False] * (m + 1) for _ in range(m + 1)]
    for a in range(m + 1):
        red[a][a] = True
        idx = 0
        for b in range(a, m):
            idx = int(system._rmult[idx, word[b] - 1])
            if system._lengths[idx] != b - a + 1:
                break
            red[a][b + 1] = True
    return red


def find_deletion_pairs(system: CoxeterSystem,
                        word: Word) -> list[tuple[int, int]]:
    """All 1-based pairs (r, t), r < t, such that the consecutive subword
    at positions r..t is not reduced while dropping either endpoint letter
    leaves it reduced.
    """
    red = _reduced_range_table(system, word)
    m = len(word)
    return [
        (r, t)
        for r in range(1, m + 1)
        for t in range(r + 1, m + 1)
        if not red[r - 1][t] and red[r][t] and red[r - 1][t - 1]
    ]


def check_gamma_reduced(x: GroupElement, w_word: Word, p: int) -> bool:
    """Keep the letters of ``w_word`` at positions in x's rightmost reduced
    subexpression or at positions >= p; report whether that word is reduced.

    The underlying proposition asserts this is always true; the operation
    exists as a machine check of it.
    """
    sys = x.system
    if not sys.is_reduced(w_word):
        raise WordNotReduced(f"{w_word} is not reduced")
    if not 1 <= p <= len(w_word) + 1:
        raise ValueError(f"position {p} not in 1..{len(w_word) + 1}")
    selected = rightmost_positions(x, w_word)
    if selected is None:
        raise NotComparable("x is not below the word's value")
    keep = set(selected) | set(range(p, len(w_word) + 1))
    gamma = tuple(w_word[j - 1] for j in sorted(keep))
    return sys.is_reduced(gamma)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
