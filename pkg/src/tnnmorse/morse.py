"""Morse matchings on cell posets and Bruhat intervals.

Two routes to the same matching: the greedy position rule (an unmatched
cell grabs the partner whose position set adds the largest unused index
of the reduced word), and Chari's rank-descending algorithm driven by an
EL-labeling.  Closure matchings are blockwise unions of the former and
leave a single critical 0-cell; boundary matchings drop the top cell and
expose its partner as a second critical cell.

>>> from .coxeter import coxeter_system
>>> W = coxeter_system("A2")
>>> m = match_sx(W.identity, W.longest, (1, 2, 1))
>>> sorted((v.word, vp.word) for v, vp in sx_pairs(W.identity, W.longest, (1, 2, 1)))
[((), (1,)), ((1, 2), (1, 2, 1)), ((2,), (2, 1))]
>>> m.critical_indices
()
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping

from .bruhat import HassePoset, bruhat_leq, interval
from .cells import CellIndex, boundary_poset, cell_from_pair, closure_poset, partition_by_w
from .coxeter import GroupElement, Word
from .errors import (
    MatchingConflict,
    NotComparable,
    NotEL,
    WordMismatch,
    WordNotReduced,
    ZeroDimensional,
)
from .shelling import ELLabeling, last_set, verify_el
from .subexpr import positive_subexpression

__all__ = [
    "MorseMatching",
    "MorseSummary",
    "sx_poset",
    "sx_pairs",
    "match_sx",
    "match_closure",
    "match_boundary",
    "chari_matching",
    "verify_acyclic",
    "order_independence_check",
    "goodness_report",
    "morse_summary",
]

WordChoice = Callable[[GroupElement], Word]


@dataclass(frozen=True)
class MorseMatching:
    """A matching on the covers of a graded poset.

    ``matched`` holds (lower, upper) index pairs; every index appears in
    at most one pair and every pair is a cover, checked on construction.
    """

    poset: HassePoset
    matched: frozenset[tuple[int, int]]
    _partner: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        partner: dict[int, int] = {}
        for a, b in self.matched:
            if (a, b) not in self.poset.covers:
                raise MatchingConflict(f"({a},{b}) is not a cover")
            if a in partner or b in partner:
                raise MatchingConflict(f"element matched twice in ({a},{b})")
            partner[a] = b
            partner[b] = a
        object.__setattr__(self, "_partner", partner)

    def partner(self, i: int) -> int | None:
        return self._partner.get(i)

    @property
    def critical_indices(self) -> tuple[int, ...]:
        return tuple(
            i for i in range(len(self.poset)) if i not in self._partner
        )

    @property
    def critical_elements(self) -> tuple:
        return tuple(self.poset.elements[i] for i in self.critical_indices)


@dataclass(frozen=True)
class MorseSummary:
    """Critical-cell counts per dimension and the two Euler numbers.

    ``euler`` is the alternating sum over critical cells, ``total_euler``
    over all cells; they agree for any matching since matched pairs
    cancel.  Rank -1 entries (an adjoined bottom) are excluded.
    """

    m_p: Mapping[int, int]
    euler: int
    total_euler: int


def sx_poset(x: GroupElement, w: GroupElement) -> HassePoset:
    """The poset of cells with fixed second factor w and x <= v <= w,
    i.e. the dual of the Bruhat interval [x, w] ranked by l(w) - l(v).
    """
    return interval(x, w).poset.dual()


def _grab(v: GroupElement, w_word: Word) -> tuple[GroupElement, Word] | None:
    """The partner rule: add the largest position of w_word not used by
    the rightmost subexpression of v.  None when every position is used.
    """
    pos = set(positive_subexpression(v, w_word).positions)
    k = 0
    for r in range(len(w_word), 0, -1):
        if r not in pos:
            k = r
            break
    if k == 0:
        return None
    newpos = tuple(sorted(pos | {k}))
    vp = v.system.element(tuple(w_word[j - 1] for j in newpos))
    if vp.length != v.length + 1:
        raise MatchingConflict(
            f"positions {newpos} of {w_word} do not spell a reduced word"
        )
    if positive_subexpression(vp, w_word).positions != newpos:
        raise MatchingConflict(
            f"positions {newpos} of {w_word} are not rightmost for {vp!r}"
        )
    return vp, newpos


def _run_sx(x: GroupElement, w: GroupElement, w_word: Word,
            rng: random.Random | None) -> tuple[tuple[GroupElement, GroupElement], ...]:
    sys = x.system
    sys.check_same(w)
    if not sys.is_reduced(w_word):
        raise WordNotReduced(f"{w_word} is not reduced")
    if sys.element(w_word) != w:
        raise WordMismatch(f"{w_word} does not spell {w!r}")
    if not bruhat_leq(x, w):
        raise NotComparable(f"{x!r} is not below {w!r}")

    members = interval(x, w).poset.elements
    by_len: dict[int, list[GroupElement]] = {}
    for v in members:
        by_len.setdefault(v.length, []).append(v)

    matched: dict[GroupElement, GroupElement] = {}
    pairs: list[tuple[GroupElement, GroupElement]] = []
    for length in sorted(by_len):
        group = sorted(
            by_len[length],
            key=lambda v: positive_subexpression(v, w_word).positions,
        )
        if rng is not None:
            rng.shuffle(group)
        for v in group:
            if v in matched:
                continue
            grabbed = _grab(v, w_word)
            if grabbed is None:
                continue  # v uses every position; stays critical
            vp, _ = grabbed
            if vp in matched:
                raise MatchingConflict(
                    f"partner {vp!r} of {v!r} is already matched"
                )
            matched[v] = vp
            matched[vp] = v
            pairs.append((v, vp))
    return tuple(pairs)


@lru_cache(maxsize=None)
def sx_pairs(x: GroupElement, w: GroupElement,
             w_word: Word) -> tuple[tuple[GroupElement, GroupElement], ...]:
    """Matched pairs (v, v') with l(v') = l(v)+1, deterministic order."""
    return _run_sx(x, w, tuple(w_word), None)


def match_sx(x: GroupElement, w: GroupElement, w_word: Word,
             rng: random.Random | None = None) -> MorseMatching:
    """The explicit matching on the cells between x and w, as a matching
    on the dual interval poset; no critical cells when x < w, one
    (the whole poset) when x = w.
    """
    poset = sx_poset(x, w)
    pos = {v: i for i, v in enumerate(poset.elements)}
    pairs = sx_pairs(x, w, tuple(w_word)) if rng is None else \
        _run_sx(x, w, tuple(w_word), rng)
    edges = frozenset((pos[vp], pos[v]) for v, vp in pairs)
    return MorseMatching(poset, edges)


def match_closure(c: CellIndex, word_choice: WordChoice | None = None,
                  rng: random.Random | None = None) -> MorseMatching:
    """Union of blockwise matchings over the closure of c.

    Blocks are indexed by the third factor y; the cells of a block
    correspond to group elements v in the interval [s(y), y], where s(y)
    is the block minimum (equal to x u^{-1} for the top block y = w, but
    strictly below it for blocks only reachable through a nontrivial
    factorization of a parabolic part).  Each block inherits the
    position-rule matching for the chosen reduced word of y (ShortLex
    normal form by default); the one singleton block contributes the
    single critical 0-cell, indexed by the minimal-representative part
    of x u^{-1} (which is x u^{-1} itself whenever that is minimal in
    its coset).
    """
    if c.is_bottom:
        raise ValueError("the bottom sentinel has no closure matching")
    par = c.parabolic
    cl = closure_poset(c)
    edges: list[tuple[int, int]] = []
    for y, block in partition_by_w(cl).items():
        sigma = min((t.x * t.u.inverse() for t in block),
                    key=lambda z: (z.length, z.word))
        word_y = tuple(word_choice(y)) if word_choice else y.word
        pairs = sx_pairs(sigma, y, word_y) if rng is None else \
            _run_sx(sigma, y, word_y, rng)
        if 2 * len(pairs) != len(block) - (1 if sigma == y else 0):
            raise MatchingConflict(
                f"block y={y!r} of {c!r} is not the interval [{sigma!r}, y]"
            )
        for v, vp in pairs:
            lo = cl.index_of(cell_from_pair(par, vp, y))
            hi = cl.index_of(cell_from_pair(par, v, y))
            edges.append((lo, hi))
    return MorseMatching(cl, frozenset(edges))


def match_boundary(c: CellIndex,
                   word_choice: WordChoice | None = None) -> MorseMatching:
    """Restriction of the closure matching to the boundary of c; the
    ex-partner of c becomes a second critical cell of dimension
    dim(c) - 1.
    """
    if c.is_bottom or c.dim < 1:
        raise ZeroDimensional(f"{c!r} has no boundary matching")
    full = match_closure(c, word_choice)
    bd = boundary_poset(c)
    top = full.poset.index_of(c)
    edges = []
    for a, b in full.matched:
        if top in (a, b):
            continue
        edges.append((bd.index_of(full.poset.elements[a]),
                      bd.index_of(full.poset.elements[b])))
    return MorseMatching(bd, frozenset(edges))


def chari_matching(poset: HassePoset, labeling: ELLabeling,
                   check_el: bool = True) -> MorseMatching:
    """Rank-descending greedy matching from an EL-labeling: each
    unmatched element takes its unique lowest cover carrying the largest
    label, when that cover is free; otherwise it stays critical.
    """
    if labeling.poset is not poset:
        raise ValueError("labeling does not belong to the given poset")
    if check_el:
        ok, witness = verify_el(labeling)
        if not ok:
            raise NotEL(f"labeling is not EL: {witness}")
    by_rank = poset.indices_by_rank()
    lo_rank = min(by_rank)
    taken: set[int] = set()
    edges: list[tuple[int, int]] = []
    for r in sorted(by_rank, reverse=True):
        if r == lo_rank:
            break
        for i in by_rank[r]:
            if i in taken:
                continue
            last = last_set(labeling, i)
            if len(last) == 1 and last[0] not in taken:
                edges.append((last[0], i))
                taken.add(last[0])
                taken.add(i)
    return MorseMatching(poset, frozenset(edges))


def verify_acyclic(m: MorseMatching) -> tuple[bool, tuple[int, ...] | None]:
    """Cycle check on the directed graph with matched covers pointing up
    and all other covers pointing down; returns a cycle witness (as a
    poset index sequence) on failure.
    """
    n = len(m.poset)
    out: list[list[int]] = [[] for _ in range(n)]
    for a, b in m.poset.covers:
        if (a, b) in m.matched:
            out[a].append(b)
        else:
            out[b].append(a)
    color = [0] * n  # 0 new, 1 on stack, 2 done
    parent: dict[int, int] = {}
    for start in range(n):
        if color[start]:
            continue
        stack: list[tuple[int, int]] = [(start, 0)]
        color[start] = 1
        while stack:
            node, ptr = stack[-1]
            if ptr < len(out[node]):
                stack[-1] = (node, ptr + 1)
                nxt = out[node][ptr]
                if color[nxt] == 1:
                    cycle = [nxt]
                    cur = node
                    while cur != nxt:
                        cycle.append(cur)
                        cur = parent[cur]
                    cycle.reverse()
                    return False, tuple(cycle)
                if color[nxt] == 0:
                    color[nxt] = 1
                    parent[nxt] = node
                    stack.append((nxt, 0))
            else:
                color[node] = 2
                stack.pop()
    return True, None


def order_independence_check(target, orderings: int = 10,
                             seed: int = 0) -> bool:
    """Re-run a matching construction under shuffled processing orders
    and compare matched-edge sets.  ``target`` is either a CellIndex
    (closure matching) or a triple (x, w, w_word).
    """
    if isinstance(target, CellIndex):
        reference = match_closure(target).matched
        runs = (
            match_closure(target, rng=random.Random(seed + k)).matched
            for k in range(orderings)
        )
    else:
        x, w, w_word = target
        reference = match_sx(x, w, w_word).matched
        runs = (
            match_sx(x, w, w_word, rng=random.Random(seed + k)).matched
            for k in range(orderings)
        )
    return all(run == reference for run in runs)


def goodness_report(m: MorseMatching,
                    word_choice: WordChoice | None = None
                    ) -> tuple[int, int, list[tuple[int, int]]]:
    """Audit every matched edge of a closure/boundary matching with the
    good-pair certificate; returns (checked, good, failures).
    """
    from .errors import TnnMorseError
    from .subexpr import is_good_pair

    checked = good = 0
    failures: list[tuple[int, int]] = []
    for a, b in sorted(m.matched):
        lo, hi = m.poset.elements[a], m.poset.elements[b]
        word = tuple(word_choice(hi.w)) if word_choice else hi.w.word
        checked += 1
        try:
            ok = is_good_pair(lo, hi, word)
        except TnnMorseError:
            ok = False  # e.g. a corrupted edge joining different blocks
        if ok:
            good += 1
        else:
            failures.append((a, b))
    return checked, good, failures


def morse_summary(m: MorseMatching) -> MorseSummary:
    """Per-dimension critical counts plus both Euler numbers (ranks
    below 0 excluded from the sums)."""
    m_p: dict[int, int] = {}
    for i in m.critical_indices:
        r = m.poset.rank_of(i)
        if r >= 0:
            m_p[r] = m_p.get(r, 0) + 1
    euler = sum((-1) ** p * k for p, k in m_p.items())
    total = sum(
        (-1) ** r for r in m.poset.ranks if r >= 0
    )
    return MorseSummary(dict(sorted(m_p.items())), euler, total)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
