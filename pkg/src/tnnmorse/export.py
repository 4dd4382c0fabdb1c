"""Serialization: versioned JSON for posets, matchings and labelings,
plus Graphviz DOT renderings (rank-layered Hasse diagrams, matching
overlays).

All emitters are deterministic: dictionaries are dumped with sorted
keys, edge lists are sorted, and no timestamps or machine state leak
into the output, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
from typing import Iterable

from .bruhat import HassePoset
from .cells import (
    TYPE_BOTTOM,
    TYPE_SHRINK_W,
    TYPE_SHRINK_X,
    CellIndex,
    QPoset,
    bottom_cell,
    make_cell,
)
from .coxeter import CoxeterSystem, GroupElement, Word, coxeter_system
from .morse import MorseMatching
from .shelling import ELLabeling

__all__ = [
    "SCHEMA",
    "word_str",
    "parse_word",
    "cell_str",
    "parse_cell",
    "cell_to_json",
    "qposet_to_json",
    "qposet_from_json",
    "matching_to_json",
    "labeling_to_json",
    "dumps",
    "hasse_dot",
    "labeling_dot",
    "matching_dot",
]

SCHEMA = "tnn-morse/1"


def word_str(word: Word) -> str:
    """Comma-joined generator indices; the empty word prints as ``e``."""
    return ",".join(str(i) for i in word) if word else "e"


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "e"):
        return ()
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(f"malformed word {text!r}; expected e.g. 1,2,1")


def cell_str(c: CellIndex) -> str:
    if c.is_bottom:
        return "bottom"
    return ":".join(word_str(g.word) for g in (c.x, c.u, c.w))


def parse_cell(parabolic, text: str) -> CellIndex:
    """Inverse of :func:`cell_str` for the x:u:w form."""
    if text.strip() == "bottom":
        return bottom_cell(parabolic)
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"malformed cell {text!r}; expected x:u:w")
    sys = parabolic.system
    x, u, w = (sys.element(parse_word(p)) for p in parts)
    return make_cell(parabolic, x, u, w)


def cell_to_json(c: CellIndex) -> dict:
    if c.is_bottom:
        return {"bottom": True, "dim": -1}
    return {
        "x": word_str(c.x.word),
        "u": word_str(c.u.word),
        "w": word_str(c.w.word),
        "dim": c.dim,
    }


def qposet_to_json(poset: QPoset) -> dict:
    covers = sorted(
        [a, b, poset.tags[(a, b)]] for a, b in poset.covers
    )
    return {
        "schema": SCHEMA,
        "kind": "qposet",
        "type": poset.system.label,
        "parabolic": sorted(poset.parabolic.J),
        "with_bottom": poset.with_bottom,
        "cells": [cell_to_json(c) for c in poset.cells],
        "dims": list(poset.ranks),
        "covers": covers,
    }


def qposet_from_json(data: dict) -> QPoset:
    if data.get("schema") != SCHEMA or data.get("kind") != "qposet":
        raise ValueError("not a tnn-morse/1 qposet document")
    system = coxeter_system(data["type"])
    par = system.parabolic(data["parabolic"])
    cells = []
    for entry in data["cells"]:
        if entry.get("bottom"):
            cells.append(bottom_cell(par))
        else:
            cells.append(make_cell(
                par,
                *(system.element(parse_word(entry[k])) for k in "xuw"),
            ))
    covers = [(a, b) for a, b, _ in data["covers"]]
    tags = {(a, b): t for a, b, t in data["covers"]}
    return QPoset(system, par, cells, data["dims"], covers, tags,
                  data["with_bottom"])


def matching_to_json(m: MorseMatching) -> dict:
    poset = m.poset
    body: dict = {
        "schema": SCHEMA,
        "kind": "matching",
        "matched": sorted([a, b] for a, b in m.matched),
        "critical": list(m.critical_indices),
    }
    if isinstance(poset, QPoset):
        body["poset"] = qposet_to_json(poset)
        body["critical_cells"] = [
            cell_to_json(poset.cells[i]) for i in m.critical_indices
        ]
    return body


def labeling_to_json(labeling: ELLabeling) -> dict:
    poset = labeling.poset
    return {
        "schema": SCHEMA,
        "kind": "labeling",
        "elements": [word_str(e.word) for e in poset.elements],
        "ranks": list(poset.ranks),
        "edges": sorted(
            [a, b, word_str(t.as_word)]
            for (a, b), t in labeling.labels.items()
        ),
        "order": [word_str(t.as_word) for t in labeling.order.sequence],
    }


def dumps(data: dict) -> str:
    """The one JSON writer: sorted keys, two-space indent, newline end."""
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _node_label(el) -> str:
    if isinstance(el, CellIndex):
        return "0" if el.is_bottom else cell_str(el)
    if isinstance(el, GroupElement):
        return word_str(el.word)
    return str(el)


_TAG_STYLE = {
    TYPE_SHRINK_X: ' [color="steelblue"]',
    TYPE_SHRINK_W: ' [color="darkgreen"]',
    TYPE_BOTTOM: ' [color="gray", style="dashed"]',
}


def hasse_dot(poset: HassePoset, name: str = "hasse") -> str:
    """Rank-layered digraph with covers drawn bottom-up; on a cell poset
    the edge color encodes the cover type."""
    tags = poset.tags if isinstance(poset, QPoset) else {}
    lines = [
        f"digraph {name} {{",
        "  rankdir=BT;",
        '  node [shape=box, fontname="monospace"];',
    ]
    for r, idxs in sorted(poset.indices_by_rank().items()):
        row = " ".join(f"n{i};" for i in sorted(idxs))
        lines.append(f"  {{ rank=same; {row} }}")
    for i, el in enumerate(poset.elements):
        lines.append(f'  n{i} [label="{_node_label(el)}"];')
    for a, b in sorted(poset.covers):
        lines.append(f"  n{a} -> n{b}{_TAG_STYLE.get(tags.get((a, b)), '')};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def labeling_dot(labeling: ELLabeling, name: str = "labeling") -> str:
    """Hasse layout with each cover edge annotated by its reflection."""
    poset = labeling.poset
    lines = [
        f"digraph {name} {{",
        "  rankdir=BT;",
        '  node [shape=box, fontname="monospace"];',
    ]
    for r, idxs in sorted(poset.indices_by_rank().items()):
        row = " ".join(f"n{i};" for i in sorted(idxs))
        lines.append(f"  {{ rank=same; {row} }}")
    for i, el in enumerate(poset.elements):
        lines.append(f'  n{i} [label="{_node_label(el)}"];')
    for a, b in sorted(poset.covers):
        t = labeling.labels[(a, b)]
        lines.append(f'  n{a} -> n{b} [label="{word_str(t.as_word)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def matching_dot(m: MorseMatching, name: str = "matching") -> str:
    """Hasse layout with matched covers bold red and critical elements
    double-bordered; unmatched covers stay thin gray."""
    poset = m.poset
    critical = set(m.critical_indices)
    lines = [
        f"digraph {name} {{",
        "  rankdir=BT;",
        '  node [shape=box, fontname="monospace"];',
    ]
    for r, idxs in sorted(poset.indices_by_rank().items()):
        row = " ".join(f"n{i};" for i in sorted(idxs))
        lines.append(f"  {{ rank=same; {row} }}")
    for i, el in enumerate(poset.elements):
        extra = ", peripheries=2, color=red" if i in critical else ""
        lines.append(f'  n{i} [label="{_node_label(el)}"{extra}];')
    for a, b in sorted(poset.covers):
        if (a, b) in m.matched:
            lines.append(f"  n{a} -> n{b} [color=red, penwidth=2.2];")
        else:
            lines.append(f"  n{a} -> n{b} [color=gray60];")
    lines.append("}")
    return "\n".join(lines) + "\n"
