"""Reflection orders, Dyer edge labelings, and EL verification.

A reduced word s_{i_1} ... s_{i_N} of the longest element induces the
total order t_1 < t_2 < ... on all reflections, where
t_j = s_{i_1} ... s_{i_{j-1}} s_{i_j} s_{i_{j-1}} ... s_{i_1}; these are
exactly the reflection orders, and labeling every Bruhat cover x <. y by
the reflection x^{-1} y turns each interval into an EL-labeled poset.

>>> from .coxeter import coxeter_system
>>> W = coxeter_system("A2")
>>> o = reflection_order_from_word(W, (1, 2, 1))
>>> [t.as_word for t in o.sequence]
[(1,), (1, 2, 1), (2,)]
>>> is_reflection_order(W, reverse_order(o).sequence)
True
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bruhat import BruhatInterval, HassePoset
from .coxeter import CoxeterSystem, GroupElement, Reflection, Word
from .errors import (
    NotGradedBounded,
    NotLongestElement,
    NotReduced,
    WordMismatch,
)

__all__ = [
    "ReflectionOrder",
    "ELLabeling",
    "reflection_order_from_word",
    "reverse_order",
    "is_reflection_order",
    "realizing_word",
    "matching_reflection_order",
    "dyer_labeling",
    "verify_el",
    "last_set",
]


@dataclass(frozen=True)
class ReflectionOrder:
    """A total order on all reflections of a system.

    ``source_word`` is the reduced word of the longest element whose
    prefix conjugations generate the sequence; with ``is_reversed`` set,
    the sequence is the reverse of that word's order.
    """

    system: CoxeterSystem
    sequence: tuple[Reflection, ...]
    source_word: Word
    is_reversed: bool = False
    _rank: dict[int, int] = field(
        default=None, repr=False, compare=False  # type: ignore[assignment]
    )

    def __post_init__(self):
        ranks = {t.element.index: j for j, t in enumerate(self.sequence)}
        if len(ranks) != len(self.sequence):
            raise ValueError("reflection sequence has repeats")
        object.__setattr__(self, "_rank", ranks)

    def rank_of(self, t: Reflection | GroupElement) -> int:
        el = t.element if isinstance(t, Reflection) else t
        return self._rank[el.index]

    def __len__(self) -> int:
        return len(self.sequence)


def _prefix_conjugates(system: CoxeterSystem, word: Word) -> list[GroupElement]:
    out = []
    prefix = system.identity
    for i in word:
        s = system.gen(i)
        out.append(prefix * s * prefix.inverse())
        prefix = prefix * s
    return out


def reflection_order_from_word(system: CoxeterSystem,
                               w0_word: Word) -> ReflectionOrder:
    """The reflection order generated by a reduced word of w0."""
    w0_word = tuple(w0_word)
    if not system.is_reduced(w0_word):
        raise NotReduced(f"{w0_word} is not reduced")
    if system.element(w0_word) != system.longest:
        raise NotLongestElement(f"{w0_word} does not spell the longest element")
    seq = _prefix_conjugates(system, w0_word)
    if len(set(t.index for t in seq)) != len(seq):
        raise AssertionError("prefix conjugates of a reduced w0 word repeat")
    return ReflectionOrder(
        system, tuple(system.reflection_of(t) for t in seq), w0_word
    )


def reverse_order(o: ReflectionOrder) -> ReflectionOrder:
    """The reversed total order; always again a reflection order."""
    return ReflectionOrder(
        o.system, tuple(reversed(o.sequence)), o.source_word,
        not o.is_reversed,
    )


def realizing_word(system: CoxeterSystem, sequence) -> Word | None:
    """The unique reduced word of w0 whose prefix conjugations equal the
    given reflection sequence, or None if there is none.

    Reconstruction is forced: the j-th letter must be the generator
    p^{-1} t_j p for the already-determined prefix p, so a single
    deterministic walk decides realizability.
    """
    word: list[int] = []
    prefix = system.identity
    for j, t in enumerate(sequence):
        el = t.element if isinstance(t, Reflection) else t
        c = prefix.inverse() * el * prefix
        if c.length != 1:
            return None
        word.append(c.word[0])
        prefix = prefix * c
        if prefix.length != j + 1:
            return None
    if prefix != system.longest:
        return None
    return tuple(word)


def is_reflection_order(system: CoxeterSystem, sequence) -> bool:
    """True iff the sequence (a permutation of all reflections) arises
    from some reduced word of w0 by prefix conjugation.
    """
    elements = {
        (t.element if isinstance(t, Reflection) else t).index for t in sequence
    }
    expected = {t.element.index for t in system.reflections()}
    if elements != expected or len(sequence) != len(expected):
        raise ValueError("sequence is not a permutation of the reflections")
    return realizing_word(system, sequence) is not None


def matching_reflection_order(w: GroupElement, w_word: Word) -> ReflectionOrder:
    """The reflection order the matching construction needs for (w, word):
    reverse of the order from a reduced w0 word that begins with the
    reversed ``w_word``, extended greedily (smallest ascent generator).

    Under the returned order the largest reflections are, in descending
    order, the suffix conjugates s_{i_m}, s_{i_m} s_{i_{m-1}} s_{i_m}, ...
    """
    sys = w.system
    w_word = tuple(w_word)
    if not sys.is_reduced(w_word):
        raise NotReduced(f"{w_word} is not reduced")
    if sys.element(w_word) != w:
        raise WordMismatch(f"{w_word} does not spell {w!r}")
    word = list(reversed(w_word))
    z = w.inverse()
    n = sys.num_positive_roots
    while z.length < n:
        for i in range(1, sys.rank + 1):
            nxt = z.times_gen(i)
            if nxt.length > z.length:
                word.append(i)
                z = nxt
                break
    return reverse_order(reflection_order_from_word(sys, tuple(word)))


@dataclass(eq=False)
class ELLabeling:
    """An edge labeling of a graded bounded poset by reflections, with
    label comparisons delegated to a reflection order's integer ranks.
    """

    poset: HassePoset
    labels: dict[tuple[int, int], Reflection]
    order: ReflectionOrder

    def __post_init__(self):
        if set(self.labels) != set(self.poset.covers):
            raise ValueError("labels must cover exactly the Hasse edges")
        self.edge_rank = {
            e: self.order.rank_of(t) for e, t in self.labels.items()
        }


def dyer_labeling(interval: BruhatInterval, order: ReflectionOrder,
                  dualize: bool = False) -> ELLabeling:
    """Label each cover by the reflection connecting its endpoints.

    The connecting reflection is the same element whether read as
    (smaller)^{-1}(larger) or the tau with v = v' tau, so the ``dualize``
    flag only selects the poset orientation (the reversed interval used
    by the cell posets S_x(w)).
    """
    sys = interval.system
    poset = interval.poset.dual() if dualize else interval.poset
    labels = {}
    for a, b in poset.covers:
        t = poset.elements[a].inverse() * poset.elements[b]
        labels[(a, b)] = sys.reflection_of(t)
    return ELLabeling(poset, labels, order)


def _bounded_or_raise(poset: HassePoset) -> tuple[int, int]:
    mins, maxs = poset.minimal_indices(), poset.maximal_indices()
    if len(mins) != 1 or len(maxs) != 1:
        raise NotGradedBounded(
            f"expected unique bottom and top, found {len(mins)} and {len(maxs)}"
        )
    return mins[0], maxs[0]


def verify_el(labeling: ELLabeling):
    """Check the EL property on every interval of the labeled poset.

    Returns (True, None), or (False, (a, b, reason)) for the first
    violating interval.  Two facts are checked per interval [a, b]: there
    is exactly one weakly-increasing maximal chain (counted by dynamic
    programming over the interval), and the greedy lexicographically
    least chain is that increasing one.
    """
    poset = labeling.poset
    _bounded_or_raise(poset)
    n = len(poset)
    rank = labeling.edge_rank
    ups, downs = poset._masks()
    order = sorted(range(n), key=poset.ranks.__getitem__, reverse=True)
    for b in range(n):
        inside = downs[b]
        # counts[z] = list of (min_first_rank, chains) is overkill: label
        # ranks are small ints, so count per (z, r) with r = least allowed
        # first rank, walking elements by decreasing poset rank.
        nlabels = len(labeling.order)
        counts: dict[int, list[int]] = {b: [1] * (nlabels + 1)}
        for z in order:
            if z == b or not (inside >> z & 1):
                continue
            acc = [0] * (nlabels + 1)
            for z2 in poset.upper_covers(z):
                if not (inside >> z2 & 1):
                    continue
                r = rank[(z, z2)]
                c = counts[z2][r]
                for rr in range(r + 1):
                    acc[rr] += c
            counts[z] = acc
        for a in range(n):
            if a == b or not (inside >> a & 1) or not (ups[a] >> b & 1):
                continue
            total = counts[a][0]
            if total != 1:
                return False, (a, b, f"{total} weakly increasing maximal chains")
            z, prev = a, -1
            increasing = True
            while z != b:
                step = min(
                    (
                        (rank[(z, z2)], z2)
                        for z2 in poset.upper_covers(z)
                        if inside >> z2 & 1
                    ),
                )
                if step[0] < prev:
                    increasing = False
                    break
                prev, z = step
            if not increasing:
                return False, (a, b, "lex-least maximal chain is not increasing")
    return True, None


def last_set(labeling: ELLabeling, x: int) -> tuple[int, ...]:
    """All lower covers of x whose edge label is maximal in the order."""
    below = [(labeling.edge_rank[(z, x)], z) for z in labeling.poset.lower_covers(x)]
    if not below:
        return ()
    top = max(r for r, _ in below)
    return tuple(sorted(z for r, z in below if r == top))


if __name__ == "__main__":
    import doctest

    doctest.testmod()
