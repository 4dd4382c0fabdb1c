"""The augmented cell poset Q^J: cell index triples, order, covers, faces.

Cells are triples (x, u, w) with x a maximal coset representative, u in
the parabolic subgroup, w a minimal representative, and x <= wu; the
dimension is l(wu) - l(x).  The order relation is the three-term chain
of Bruhat inequalities quantified over length-additive factorizations
of u, plus an adjoined bottom below everything.  Covers carry one of
three type tags; a cover fitting no type raises, because the underlying
classification lemma says that cannot happen.

>>> from .coxeter import coxeter_system
>>> W = coxeter_system("A1")
>>> [c.dim for c in enumerate_cells(W, ())]
[0, 0, 1]
>>> len(q_poset(W, ()))
4
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bruhat import HassePoset, leq_matrix
from .coxeter import CoxeterSystem, GroupElement, ParabolicData
from .errors import SystemMismatch, UnclassifiableCover, ZeroDimensional

__all__ = [
    "CellIndex",
    "QPoset",
    "bottom_cell",
    "make_cell",
    "cell_from_pair",
    "enumerate_cells",
    "q_leq",
    "q_poset",
    "q_covers",
    "closure_poset",
    "boundary_poset",
    "partition_by_w",
    "TYPE_SHRINK_X",
    "TYPE_SHRINK_W",
    "TYPE_BOTTOM",
]

# Cover type tags: in a cover lower <. upper, either the x factor grew
# (same w), or the w factor shrank (same x), or lower is the bottom.
TYPE_SHRINK_X = 1
TYPE_SHRINK_W = 2
TYPE_BOTTOM = 3


@dataclass(frozen=True)
class CellIndex:
    """One cell of Q^J, or the adjoined bottom (all components None)."""

    parabolic: ParabolicData
    x: GroupElement | None
    u: GroupElement | None
    w: GroupElement | None

    @property
    def is_bottom(self) -> bool:
        return self.x is None

    @property
    def dim(self) -> int:
        if self.is_bottom:
            return -1
        return (self.w * self.u).length - self.x.length

    def sort_key(self):
        if self.is_bottom:
            return (-1, (), (), ())
        return (self.dim, self.x.word, self.u.word, self.w.word)

    def __repr__(self) -> str:
        if self.is_bottom:
            return "<cell bottom>"
        fmt = lambda w: ",".join(map(str, w.word)) or "e"
        return f"<cell {fmt(self.x)}:{fmt(self.u)}:{fmt(self.w)} dim={self.dim}>"


def bottom_cell(parabolic: ParabolicData) -> CellIndex:
    return CellIndex(parabolic, None, None, None)


def make_cell(parabolic: ParabolicData, x: GroupElement, u: GroupElement,
              w: GroupElement) -> CellIndex:
    """Validated cell constructor: checks the three membership conditions
    and x <= wu.
    """
    if not parabolic.is_max_rep(x):
        raise ValueError(f"{x!r} is not a maximal coset representative")
    if u not in parabolic:
        raise ValueError(f"{u!r} is not in the parabolic subgroup")
    if not parabolic.is_min_rep(w):
        raise ValueError(f"{w!r} is not a minimal coset representative")
    mat = leq_matrix(parabolic.system)
    if not mat[x.index, (w * u).index]:
        raise ValueError(f"x={x!r} is not below wu for w={w!r}, u={u!r}")
    return CellIndex(parabolic, x, u, w)


def cell_from_pair(parabolic: ParabolicData, v: GroupElement,
                   y: GroupElement) -> CellIndex:
    """The unique cell with third component y and x u^{-1} = v.

    Splitting v = a b with a minimal and b parabolic, the cell is
    (a u0, b^{-1} u0, y) where u0 is the parabolic's longest element.
    """
    a, b = parabolic.factorize(v)
    u0 = parabolic.longest
    return make_cell(parabolic, a * u0, b.inverse() * u0, y)


def enumerate_cells(system: CoxeterSystem,
                    J: Iterable[int]) -> list[CellIndex]:
    """All proper cells of Q^J, sorted by (dim, x, u, w); the bottom
    sentinel is not included here (the poset builder adjoins it).
    """
    par = system.parabolic(J)
    mat = leq_matrix(system)
    out = []
    for w in par.min_reps:
        for u in par.elements:
            wu = (w * u).index
            for x in par.max_reps:
                if mat[x.index, wu]:
                    out.append(CellIndex(par, x, u, w))
    out.sort(key=CellIndex.sort_key)
    return out


def q_leq(a: CellIndex, b: CellIndex) -> bool:
    """Face relation: a <= b in Q^J.

    With a = (x,u,w) and b = (x',u',w'), true iff some length-additive
    u1 u2 = u satisfies x'u'^{-1} <= x u2^{-1} <= w u1 <= w'.
    """
    if a.parabolic is not b.parabolic:
        raise SystemMismatch("cells from different Q posets")
    if a.is_bottom:
        return True
    if b.is_bottom:
        return False
    mat = leq_matrix(a.parabolic.system)
    zb = (b.x * b.u.inverse()).index
    wb = b.w.index
    for u1, u2 in a.parabolic.length_additive_factorizations(a.u):
        mid_lo = (a.x * u2.inverse()).index
        mid_hi = (a.w * u1).index
        if mat[zb, mid_lo] and mat[mid_lo, mid_hi] and mat[mid_hi, wb]:
            return True
    return False


class QPoset(HassePoset):
    """Hasse poset of cells, ranked by dimension, with cover type tags.

    ``elements`` are :class:`CellIndex` objects; when ``with_bottom`` the
    sentinel sits at index 0 with rank -1.  Restrictions to down-sets
    (closures, boundaries) inherit covers and tags unchanged.
    """

    def __init__(self, system: CoxeterSystem, parabolic: ParabolicData,
                 cells: Sequence[CellIndex], ranks: Sequence[int],
                 covers: Iterable[tuple[int, int]],
                 tags: dict[tuple[int, int], int], with_bottom: bool):
        super().__init__(cells, ranks, covers)
        self.system = system
        self.parabolic = parabolic
        self.tags = dict(tags)
        self.with_bottom = with_bottom
        self._pos = {c: i for i, c in enumerate(self.elements)}

    @property
    def cells(self) -> tuple[CellIndex, ...]:
        return self.elements

    def index_of(self, c: CellIndex) -> int:
        return self._pos[c]

    def dim_of(self, i: int) -> int:
        return self.ranks[i]

    def top_index(self) -> int:
        tops = self.maximal_indices()
        if len(tops) != 1:
            raise ValueError(f"poset has {len(tops)} maximal cells")
        return tops[0]

    def restrict(self, indices: Sequence[int]) -> QPoset:
        """Induced subposet on a down-set (minus, optionally, its top);
        only such restrictions keep covers and tags valid.
        """
        keep = sorted(indices)
        remap = {old: new for new, old in enumerate(keep)}
        covers = []
        tags = {}
        for a, b in self.covers:
            if a in remap and b in remap:
                edge = (remap[a], remap[b])
                covers.append(edge)
                tags[edge] = self.tags[(a, b)]
        return QPoset(
            self.system,
            self.parabolic,
            [self.elements[i] for i in keep],
            [self.ranks[i] for i in keep],
            covers,
            tags,
            with_bottom=any(self.elements[i].is_bottom for i in keep),
        )


def _classify_cover(lo: CellIndex, hi: CellIndex,
                    mat: np.ndarray) -> int:
    """Tag a cover and check the classifying lemma's consequence for it."""

    def complain(msg: str):
        raise UnclassifiableCover(f"cover {lo!r} <. {hi!r}: {msg}")

    if lo.is_bottom:
        if hi.dim != 0:
            complain("bottom covered by a cell of positive dimension")
        return TYPE_BOTTOM
    if lo.x != hi.x:
        if lo.w != hi.w:
            complain("both x and w change across one cover")
        if not mat[hi.x.index, lo.x.index]:
            complain("x does not grow downward")
        z_hi = hi.x * hi.u.inverse()
        z_lo = lo.x * lo.u.inverse()
        if z_lo.length != z_hi.length + 1 or not mat[z_hi.index, z_lo.index]:
            complain("xu^-1 is not covered by x'v^-1")
        return TYPE_SHRINK_X
    if not mat[lo.w.index, hi.w.index]:
        complain("same x but w' not below w")
    p_lo = lo.w * lo.u
    p_hi = hi.w * hi.u
    if p_hi.length != p_lo.length + 1 or not mat[p_lo.index, p_hi.index]:
        complain("w'v is not covered by wu")
    return TYPE_SHRINK_W


def q_poset(system: CoxeterSystem, J: Iterable[int],
            with_bottom: bool = True) -> QPoset:
    """Build (and cache) the full augmented cell poset for (W, J).

    The order matrix is assembled factorization by factorization with
    vectorized Bruhat lookups; covers come from transitive reduction.
    Being a partial order is asserted, not assumed.
    """
    key = (frozenset(J), with_bottom)
    cache = getattr(system, "_q_cache", None)
    if cache is None:
        cache = system._q_cache = {}
    if key in cache:
        return cache[key]

    par = system.parabolic(J)
    mat = leq_matrix(system)
    cells = enumerate_cells(system, J)
    n = len(cells)
    z_all = np.array(
        [(c.x * c.u.inverse()).index for c in cells], dtype=np.int64
    )
    w_all = np.array([c.w.index for c in cells], dtype=np.int64)

    rel = np.zeros((n, n), dtype=bool)
    by_u: dict[GroupElement, list[int]] = {}
    for i, c in enumerate(cells):
        by_u.setdefault(c.u, []).append(i)
    for u, group in by_u.items():
        idx = np.array(group, dtype=np.int64)
        for u1, u2 in par.length_additive_factorizations(u):
            u1i, u2inv = u1, u2.inverse()
            lo_mid = np.array(
                [(cells[i].x * u2inv).index for i in group], dtype=np.int64
            )
            hi_mid = np.array(
                [(cells[i].w * u1i).index for i in group], dtype=np.int64
            )
            valid = mat[lo_mid, hi_mid]
            left = mat[np.ix_(z_all, lo_mid)]    # [b, a] : z_b <= x_a u2^-1
            right = mat[np.ix_(hi_mid, w_all)]   # [a, b] : w_a u1 <= w_b
            rel[idx] |= left.T & right & valid[:, None]

    if (rel & rel.T & ~np.eye(n, dtype=bool)).any():
        raise AssertionError("cell order relation is not antisymmetric")
    strict = rel & ~np.eye(n, dtype=bool)
    reach = (strict.astype(np.float32) @ strict.astype(np.float32)) > 0
    if (reach & ~rel).any():
        raise AssertionError("cell order relation is not transitive")
    cover_mask = strict & ~reach

    offset = 1 if with_bottom else 0
    elems: list[CellIndex] = (
        [bottom_cell(par)] if with_bottom else []
    ) + list(cells)
    ranks = [c.dim for c in elems]
    edges: list[tuple[int, int]] = []
    for a, b in zip(*np.nonzero(cover_mask)):
        edges.append((int(a) + offset, int(b) + offset))
    if with_bottom:
        for i, c in enumerate(cells):
            if c.dim == 0:
                edges.append((0, i + offset))
    tags = {
        (a, b): _classify_cover(elems[a], elems[b], mat) for a, b in edges
    }
    poset = QPoset(system, par, elems, ranks, edges, tags, with_bottom)
    cache[key] = poset
    return poset


def q_covers(poset: QPoset) -> dict[tuple[int, int], int]:
    """The tagged cover set of a built Q poset (index pairs -> type)."""
    return dict(poset.tags)


def closure_poset(c: CellIndex, include_bottom: bool = False) -> QPoset:
    """Face poset of the closure of c: all cells below c, c included."""
    if c.is_bottom:
        raise ValueError("closure of the bottom sentinel is not a cell poset")
    full = q_poset(c.parabolic.system, c.parabolic.J)
    top = full.index_of(c)
    keep = [
        i for i in range(len(full))
        if full.leq(i, top) and (include_bottom or not full.elements[i].is_bottom)
    ]
    return full.restrict(keep)


def boundary_poset(c: CellIndex, include_bottom: bool = False) -> QPoset:
    """Closure of c minus c itself; needs dim(c) >= 1."""
    if c.is_bottom or c.dim < 1:
        raise ZeroDimensional(f"{c!r} has no boundary poset")
    full = q_poset(c.parabolic.system, c.parabolic.J)
    top = full.index_of(c)
    keep = [
        i for i in range(len(full))
        if i != top and full.leq(i, top)
        and (include_bottom or not full.elements[i].is_bottom)
    ]
    return full.restrict(keep)


def partition_by_w(closure: QPoset) -> dict[GroupElement, tuple[CellIndex, ...]]:
    """Split a closure's cells into blocks by third component.

    For the closure of (x, u, w), the block of y holds the cells with
    third component y, for each y in W^J with xu^{-1} <= y <= w; each
    block is order-isomorphic to the dual interval [xu^{-1}, y] via
    (a, b, y) -> a b^{-1}.
    """
    blocks: dict[GroupElement, list[CellIndex]] = {}
    for c in closure.cells:
        if not c.is_bottom:
            blocks.setdefault(c.w, []).append(c)
    return {
        y: tuple(sorted(cs, key=CellIndex.sort_key))
        for y, cs in sorted(blocks.items(), key=lambda kv: kv[0].word)
    }


if __name__ == "__main__":
    import doctest

    doctest.testmod()
