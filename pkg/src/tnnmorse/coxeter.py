"""Finite Coxeter systems realized as permutation groups on their roots.

Supported types: A_n (n >= 1), B_n and C_n (n >= 2), D_n (n >= 3), and the
exceptional crystallographic types E6, E7, E8, F4, G2.  A system is built
from an integral Cartan matrix; the whole group is enumerated as
permutations of the root list, so lengths, descents, products and normal
forms are exact integer computations with no floating point anywhere.

Generators are numbered 1..n.  A word is a tuple of generator indices,
the empty tuple being the identity; (1, 2, 1) stands for s1 s2 s1.

>>> W = coxeter_system("A2")
>>> W.group_order
6
>>> W.longest_word
(1, 2, 1)
>>> s1, s2 = W.generators
>>> s1 * s2 * s1 == s2 * s1 * s2
True
>>> sorted(w.length for w in W.elements())
[0, 1, 1, 2, 2, 3]
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    GroupTooLarge,
    RankOutOfRange,
    SystemMismatch,
    UnknownType,
    WordTooLong,
)

__all__ = [
    "DEFAULT_GROUP_CAP",
    "DEFAULT_WORD_CAP",
    "CoxeterSystem",
    "GroupElement",
    "ParabolicData",
    "Reflection",
    "coxeter_system",
]

DEFAULT_GROUP_CAP = 40_320
DEFAULT_WORD_CAP = 12

Word = tuple[int, ...]

_VALID_LETTERS = "ABCDEFG"


def _group_order(letter: str, n: int) -> int:
    if letter == "A":
        return math.factorial(n + 1)
    if letter in ("B", "C"):
        return 2**n * math.factorial(n)
    if letter == "D":
        return 2 ** (n - 1) * math.factorial(n)
    if letter == "E":
        return {6: 51_840, 7: 2_903_040, 8: 696_729_600}[n]
    if letter == "F":
        return 1_152
    return 12  # G2


def _parse_label(type_label: str, rank: int | None) -> tuple[str, int]:
    label = str(type_label).strip().upper()
    letter, digits = label[:1], label[1:]
    if letter not in _VALID_LETTERS:
        raise UnknownType(f"unsupported Coxeter type {type_label!r}")
    if digits:
        n = int(digits)
        if rank is not None and rank != n:
            raise RankOutOfRange(f"label {label!r} conflicts with rank={rank}")
    elif rank is not None:
        n = rank
    else:
        raise RankOutOfRange(f"type {label!r} needs an explicit rank")
    lo, hi = {"A": (1, None), "B": (2, None), "C": (2, None), "D": (3, None),
              "E": (6, 8), "F": (4, 4), "G": (2, 2)}[letter]
    if n < lo or (hi is not None and n > hi):
        raise RankOutOfRange(f"rank {n} is out of range for type {letter}")
    return letter, n


def _cartan_matrix(letter: str, n: int) -> list[list[int]]:
    """Cartan matrix a[i][j] = <alpha_j, alpha_i^vee>, 0-based indices."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j], a[j][i] = aij, aji

    if letter in ("A", "B", "C"):
        for i in range(n - 1):
            bond(i, i + 1)
        if letter == "B":
            a[n - 1][n - 2] = -2  # short last root
        elif letter == "C":
            a[n - 2][n - 1] = -2  # long last root
    elif letter == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif letter == "E":
        for i, j in ((0, 2), (2, 3), (3, 4), (4, 5), (1, 3)):
            bond(i, j)
        if n >= 7:
            bond(5, 6)
        if n == 8:
            bond(6, 7)
    elif letter == "F":
        for i in range(3):
            bond(i, i + 1)
        a[1][2] = -2
    else:  # G2
        bond(0, 1, -1, -3)
    return a


_BOND_TO_COXETER = {0: 2, 1: 3, 2: 4, 3: 6}


def _coxeter_matrix(cartan: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(cartan)
    return tuple(
        tuple(
            1 if i == j else _BOND_TO_COXETER[cartan[i][j] * cartan[j][i]]
            for j in range(n)
        )
        for i in range(n)
    )


def _positive_roots(cartan: list[list[int]]) -> list[Word]:
    """Closure of the simple roots under the simple reflections.

    Roots are integer coordinate tuples in the simple-root basis; images
    with a negative coordinate are negatives of known positives and are
    skipped.  Sorted by (height, first-coordinate-first), which places
    alpha_1..alpha_n at indices 0..n-1.
    """
    n = len(cartan)
    seen = {tuple(1 if j == i else 0 for j in range(n)) for i in range(n)}
    queue = list(seen)
    while queue:
        beta = queue.pop()
        for i in range(n):
            c = sum(cartan[i][j] * beta[j] for j in range(n))
            img = beta[:i] + (beta[i] - c,) + beta[i + 1:]
            if img[i] >= 0 and img not in seen:
                seen.add(img)
                queue.append(img)
    return sorted(seen, key=lambda v: (sum(v), tuple(-c for c in v)))


class GroupElement:
    """An element of a :class:`CoxeterSystem`, identified by its index.

    Cheap value object: equality and hashing use the (system, index) pair
    only.  All arithmetic delegates to the system's precomputed tables.
    """

    __slots__ = ("system", "index")

    def __init__(self, system: CoxeterSystem, index: int):
        self.system = system
        self.index = index

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GroupElement)
            and other.system is self.system
            and other.index == self.index
        )

    def __hash__(self) -> int:
        return hash((id(self.system), self.index))

    def __mul__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.system is not self.system:
            raise SystemMismatch("cannot multiply elements of different systems")
        return self.system._el(self.system._mul(self.index, other.index))

    def __repr__(self) -> str:
        word = self.word
        name = "e" if not word else "*".join(f"s{i}" for i in word)
        return f"<{self.system.label}: {name}>"

    @property
    def word(self) -> Word:
        """ShortLex normal form: the lex-least reduced word."""
        return self.system._nf[self.index]

    @property
    def length(self) -> int:
        return int(self.system._lengths[self.index])

    @property
    def is_identity(self) -> bool:
        return self.index == 0

    def inverse(self) -> GroupElement:
        return self.system._el(int(self.system._inv[self.index]))

    def times_gen(self, i: int) -> GroupElement:
        """Right multiplication by generator i (1-based)."""
        return self.system._el(int(self.system._rmult[self.index, i - 1]))

    def gen_times(self, i: int) -> GroupElement:
        """Left multiplication by generator i (1-based)."""
        return self.system._el(int(self.system._lmult[self.index, i - 1]))

    def right_descents(self) -> Word:
        row = self.system._rdesc[self.index]
        return tuple(i + 1 for i in range(len(row)) if row[i])

    def left_descents(self) -> Word:
        row = self.system._ldesc[self.index]
        return tuple(i + 1 for i in range(len(row)) if row[i])


@dataclass(frozen=True)
class Reflection:
    """A reflection together with one palindromic reduced word for it."""

    element: GroupElement
    as_word: Word

    def __repr__(self) -> str:
        return f"Reflection({'*'.join(f's{i}' for i in self.as_word)})"


class CoxeterSystem:
    """A finite Coxeter group with all element tables precomputed.

    Construction enumerates the group; afterwards the object is immutable
    in practice (all tables read-only), so instances can be shared freely
    across threads.  Use :func:`coxeter_system` to build one.
    """

    def __init__(self, type_label: str, rank: int | None = None, *,
                 max_order: int = DEFAULT_GROUP_CAP):
        letter, n = _parse_label(type_label, rank)
        order = _group_order(letter, n)
        if order > max_order:
            raise GroupTooLarge(
                f"{letter}{n} has order {order}, above the cap {max_order}; "
                "raise max_order to enumerate it anyway"
            )
        self.label = f"{letter}{n}"
        self.rank = n
        self.max_order = max_order
        cartan = _cartan_matrix(letter, n)
        self.cartan_matrix = tuple(tuple(row) for row in cartan)
        self.coxeter_matrix = _coxeter_matrix(cartan)
        self._build_tables(cartan, order)
        self.identity = self._el(0)
        self.longest = self._el(int(np.argmax(self._lengths)))
        self.generators = tuple(self.gen(i) for i in range(1, n + 1))
        self._parabolic_cache: dict[frozenset[int], ParabolicData] = {}
        self._reflections: tuple[Reflection, ...] | None = None
        self._reflection_by_index: dict[int, Reflection] = {}

    # -- construction ---------------------------------------------------

    def _build_tables(self, cartan: list[list[int]], order: int) -> None:
        n = self.rank
        pos = _positive_roots(cartan)
        nroots = len(pos)
        self.num_positive_roots = nroots
        pos_index = {beta: r for r, beta in enumerate(pos)}

        # gen_perm[i] is the action of s_i on root indices; index r + nroots
        # stands for the negative of root r.
        gen_perm = np.empty((n, 2 * nroots), dtype=np.int32)
        for i in range(n):
            for r, beta in enumerate(pos):
                c = sum(cartan[i][j] * beta[j] for j in range(n))
                img = beta[:i] + (beta[i] - c,) + beta[i + 1:]
                if img[i] >= 0:
                    j = pos_index[img]
                else:
                    j = pos_index[tuple(-x for x in img)] + nroots
                gen_perm[i, r] = j
                gen_perm[i, r + nroots] = (j + nroots) % (2 * nroots)

        # breadth-first closure; level k holds the elements of length k,
        # so indices are sorted by length.
        index: dict[bytes, int] = {}
        rows: list[np.ndarray] = []
        level = np.arange(2 * nroots, dtype=np.int32)[None, :]
        index[level[0].tobytes()] = 0
        rows.append(level[0])
        while level.size:
            nxt: list[np.ndarray] = []
            for i in range(n):
                for row in level[:, gen_perm[i]]:
                    key = row.tobytes()
                    if key not in index:
                        index[key] = len(rows)
                        rows.append(row)
                        nxt.append(row)
            level = np.array(nxt, dtype=np.int32) if nxt else np.empty((0, 0))
        if len(rows) != order:
            raise AssertionError(
                f"enumerated {len(rows)} elements, expected {order}"
            )
        perms = np.vstack(rows)
        self._perms = perms
        self._index = index
        self.group_order = order

        self._lengths = np.count_nonzero(perms[:, :nroots] >= nroots, axis=1)
        self._rmult = np.empty((order, n), dtype=np.int32)
        for i in range(n):
            composed = perms[:, gen_perm[i]]
            self._rmult[:, i] = [index[row.tobytes()] for row in composed]
        inv_perms = np.argsort(perms, axis=1).astype(np.int32)
        self._inv = np.array(
            [index[row.tobytes()] for row in inv_perms], dtype=np.int32
        )
        self._lmult = self._inv[self._rmult[self._inv]]
        self._rdesc = self._lengths[self._rmult] < self._lengths[:, None]
        self._ldesc = self._lengths[self._lmult] < self._lengths[:, None]

        # ShortLex normal forms, eagerly, in index (= length) order.
        nf: list[Word] = [()] * order
        for w in range(1, order):
            i = int(np.argmax(self._ldesc[w]))  # smallest left descent
            nf[w] = (i + 1,) + nf[self._lmult[w, i]]
        self._nf = nf

    # -- basic accessors ------------------------------------------------

    def _el(self, index: int) -> GroupElement:
        return GroupElement(self, index)

    def _mul(self, a: int, b: int) -> int:
        composed = self._perms[a][self._perms[b]]
        return self._index[composed.tobytes()]

    def gen(self, i: int) -> GroupElement:
        if not 1 <= i <= self.rank:
            raise RankOutOfRange(f"generator index {i} not in 1..{self.rank}")
        return self._el(int(self._rmult[0, i - 1]))

    def element(self, word: Iterable[int]) -> GroupElement:
        """Product of the given generator word (1-based indices)."""
        idx = 0
        for i in word:
            if not 1 <= i <= self.rank:
                raise RankOutOfRange(
                    f"generator index {i} not in 1..{self.rank}"
                )
            idx = int(self._rmult[idx, i - 1])
        return self._el(idx)

    def is_reduced(self, word: Word) -> bool:
        return self.element(word).length == len(word)

    def elements(self) -> Iterator[GroupElement]:
        """All group elements, in length-nondecreasing index order."""
        return (self._el(i) for i in range(self.group_order))

    @property
    def longest_word(self) -> Word:
        return self.longest.word

    def check_same(self, *elements: GroupElement) -> None:
        for a in elements:
            if a.system is not self:
                raise SystemMismatch(
                    f"element of {a.system.label} used with {self.label}"
                )

    # -- reflections ----------------------------------------------------

    def reflections(self) -> tuple[Reflection, ...]:
        """All reflections, sorted by (length, normal form).

        The count always equals the number of positive roots.
        """
        if self._reflections is None:
            found = {int(self._rmult[0, i]) for i in range(self.rank)}
            queue = list(found)
            while queue:
                t = queue.pop()
                for i in range(self.rank):
                    conj = int(self._rmult[self._lmult[t, i], i])
                    if conj not in found:
                        found.add(conj)
                        queue.append(conj)
            if len(found) != self.num_positive_roots:
                raise AssertionError("reflection count != positive root count")
            ordered = sorted(found, key=lambda t: (self._lengths[t], self._nf[t]))
            refs = tuple(
                Reflection(self._el(t), self._palindrome(t)) for t in ordered
            )
            self._reflections = refs
            self._reflection_by_index = {r.element.index: r for r in refs}
        return self._reflections

    def _palindrome(self, t: int) -> Word:
        """A palindromic reduced word for the reflection with index t."""
        if self._lengths[t] == 1:
            return self._nf[t]
        for i in range(self.rank):
            conj = int(self._rmult[self._lmult[t, i], i])
            if self._lengths[conj] == self._lengths[t] - 2:
                inner = self._palindrome(conj)
                return (i + 1,) + inner + (i + 1,)
        raise AssertionError(f"element {self._nf[t]} is not a reflection")

    def reflection_of(self, w: GroupElement) -> Reflection:
        """The :class:`Reflection` wrapper for a reflection element."""
        self.reflections()
        try:
            return self._reflection_by_index[w.index]
        except KeyError:
            raise ValueError(f"{w!r} is not a reflection") from None

    def is_reflection(self, w: GroupElement) -> bool:
        self.reflections()
        return w.index in self._reflection_by_index

    # -- words ----------------------------------------------------------

    def all_reduced_words(self, w: GroupElement,
                          cap: int = DEFAULT_WORD_CAP) -> tuple[Word, ...]:
        """All reduced words for w, lex-sorted.  The first is ``w.word``.

        Counts grow fast with length, hence the cap on ``w.length``.
        """
        self.check_same(w)
        if w.length > cap:
            raise WordTooLong(
                f"length {w.length} exceeds cap {cap} for reduced-word listing"
            )
        memo: dict[int, tuple[Word, ...]] = {0: ((),)}

        def expand(idx: int) -> tuple[Word, ...]:
            try:
                return memo[idx]
            except KeyError:
                pass
            out: list[Word] = []
            for i in range(self.rank):
                if self._ldesc[idx, i]:
                    for tail in expand(int(self._lmult[idx, i])):
                        out.append((i + 1,) + tail)
            memo[idx] = tuple(out)
            return memo[idx]

        return expand(w.index)

    # -- parabolic subgroups --------------------------------------------

    def parabolic(self, J: Iterable[int]) -> ParabolicData:
        key = frozenset(J)
        for i in key:
            if not 1 <= i <= self.rank:
                raise RankOutOfRange(
                    f"parabolic index {i} not in 1..{self.rank}"
                )
        if key not in self._parabolic_cache:
            self._parabolic_cache[key] = ParabolicData(self, key)
        return self._parabolic_cache[key]

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "type": self.label,
            "order": self.group_order,
            "longest_word": list(self.longest_word),
        }

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.label}, order={self.group_order})"


class ParabolicData:
    """Standard parabolic subgroup W_J with coset representative tables.

    ``elements`` is W_J, ``min_reps`` is W^J (no right descent in J),
    ``max_reps`` is the set of maximal coset representatives (every j in J
    a right descent).  ``factorize`` splits w = w^J * w_J with additive
    lengths.
    """

    def __init__(self, system: CoxeterSystem, J: frozenset[int]):
        self.system = system
        self.J = J
        jlist = sorted(J)
        members = {0}
        queue = [0]
        while queue:
            w = queue.pop()
            for j in jlist:
                nxt = int(system._rmult[w, j - 1])
                if nxt not in members:
                    members.add(nxt)
                    queue.append(nxt)
        order = sorted(members)
        self._member_set = members
        self.elements = tuple(system._el(i) for i in order)
        self.longest = max(self.elements, key=lambda w: w.length)
        if system.group_order % len(order):
            raise AssertionError("|W_J| does not divide |W|")

        jmask = np.zeros(system.rank, dtype=bool)
        for j in jlist:
            jmask[j - 1] = True
        rdesc = system._rdesc[:, jmask]
        min_idx = np.nonzero(~rdesc.any(axis=1))[0] if jlist else \
            np.arange(system.group_order)
        max_idx = np.nonzero(rdesc.all(axis=1))[0] if jlist else \
            np.arange(system.group_order)
        self.min_reps = tuple(system._el(int(i)) for i in min_idx)
        self.max_reps = tuple(system._el(int(i)) for i in max_idx)
        if len(self.min_reps) * len(order) != system.group_order:
            raise AssertionError("|W^J| * |W_J| != |W|")

    def __contains__(self, w: GroupElement) -> bool:
        return w.system is self.system and w.index in self._member_set

    def is_min_rep(self, w: GroupElement) -> bool:
        return not any(j in self.J for j in w.right_descents())

    def is_max_rep(self, w: GroupElement) -> bool:
        return all(j in w.right_descents() for j in self.J)

    @property
    def longest_min_rep(self) -> GroupElement:
        """The longest element of W^J; equals w0 * u0^{-1}."""
        return self.factorize(self.system.longest)[0]

    def factorize(self, w: GroupElement) -> tuple[GroupElement, GroupElement]:
        """Split w = a * b with a in W^J, b in W_J, lengths additive."""
        self.system.check_same(w)
        sys = self.system
        z = w.index
        b = 0
        while True:
            for j in sorted(self.J):
                if sys._rdesc[z, j - 1]:
                    z = int(sys._rmult[z, j - 1])
                    b = int(sys._lmult[b, j - 1])
                    break
            else:
                break
        a_el, b_el = sys._el(z), sys._el(b)
        if a_el.length + b_el.length != w.length:
            raise AssertionError("parabolic factorization lost length")
        return a_el, b_el

    def length_additive_factorizations(
        self, u: GroupElement
    ) -> tuple[tuple[GroupElement, GroupElement], ...]:
        """All (u1, u2) in W_J x W_J with u1*u2 = u, lengths adding up."""
        if u not in self:
            raise ValueError(f"{u!r} is not in W_J for J={sorted(self.J)}")
        out = []
        for u1 in self.elements:
            u2 = u1.inverse() * u
            if u1.length + u2.length == u.length:
                out.append((u1, u2))
        return tuple(sorted(out, key=lambda p: (p[0].length, p[0].word)))

    def __repr__(self) -> str:
        return (
            f"ParabolicData({self.system.label}, J={sorted(self.J)}, "
            f"|W_J|={len(self.elements)}, |W^J|={len(self.min_reps)})"
        )


_SYSTEMS: dict[tuple, CoxeterSystem] = {}


def coxeter_system(type_label: str, rank: int | None = None, *,
                   max_order: int = DEFAULT_GROUP_CAP) -> CoxeterSystem:
    """Build a finite Coxeter system from a label like "A3" or ("B", 3).

    The classical group order formula is checked before enumeration, so a
    too-large group fails fast with :class:`GroupTooLarge`.  Instances
    are cached per (label, rank, cap) spelling, so elements from repeated
    calls compare equal and per-system caches (parabolic data, cell
    posets) are shared.

    >>> coxeter_system("G2").group_order
    12
    >>> coxeter_system("B", 3).coxeter_matrix[1][2]
    4
    """
    key = (type_label, rank, max_order)
    if key not in _SYSTEMS:
        _SYSTEMS[key] = CoxeterSystem(type_label, rank, max_order=max_order)
    return _SYSTEMS[key]


if __name__ == "__main__":
    import doctest

    doctest.testmod()
