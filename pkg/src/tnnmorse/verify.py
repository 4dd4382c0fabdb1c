"""The invariant suite behind ``verify``: thinness, Euler counts,
closure and boundary matchings with goodness audits, EL-labelings,
order independence and small homology certificates, each reported as a
named pass/fail with a witness on failure.

Per-cell matching checks fan out over a thread pool; report assembly
stays serialized.  A fault can be injected into the top cell's closure
matching to exercise the failure path end to end.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .bruhat import interval, is_thin
from .cells import QPoset, boundary_poset, closure_poset, q_poset
from .coxeter import CoxeterSystem
from .errors import TnnMorseError
from .export import SCHEMA, cell_str
from .homology import gf2_betti, order_complex
from .morse import (
    MorseMatching,
    goodness_report,
    match_boundary,
    match_closure,
    morse_summary,
    order_independence_check,
    verify_acyclic,
)
from .shelling import (
    dyer_labeling,
    matching_reflection_order,
    reflection_order_from_word,
    reverse_order,
    verify_el,
)

__all__ = ["CheckResult", "Report", "run_suite", "standard_orders"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None

    def to_json(self) -> dict:
        body: dict = {"name": self.name, "passed": self.passed}
        if self.detail:
            body["detail"] = self.detail
        if self.witness is not None:
            body["witness"] = self.witness
        return body


@dataclass
class Report:
    system: str
    parabolics: list[tuple[int, ...]]
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "report",
            "system": self.system,
            "parabolics": [list(J) for J in self.parabolics],
            "passed": self.passed,
            "counts": {
                "checks": len(self.checks),
                "failed": sum(not c.passed for c in self.checks),
            },
            "checks": [c.to_json() for c in self.checks],
        }


def standard_orders(system: CoxeterSystem, count: int = 3):
    """Distinct reflection orders: the normal form of w0, its reverse,
    and orders matched to other reduced words until ``count`` is hit (or
    the supply runs out, e.g. in rank 1 where only one order exists)."""
    w0 = system.longest
    seen = []
    candidates = [
        reflection_order_from_word(system, w0.word),
        reverse_order(reflection_order_from_word(system, w0.word)),
        matching_reflection_order(w0, w0.word),
    ]

    def feed(order):
        key = tuple(t.element.index for t in order.sequence)
        if key not in {tuple(t.element.index for t in o.sequence)
                       for o in seen}:
            seen.append(order)

    for order in candidates:
        feed(order)
    if len(seen) < count:
        for word in system.all_reduced_words(w0):
            feed(reflection_order_from_word(system, word))
            if len(seen) >= count:
                break
    return seen[:count]


def _k22_matching(poset: QPoset) -> MorseMatching | None:
    """A deliberately cyclic two-edge matching on a butterfly (two covers
    shared by two upper elements), used only for fault injection."""
    for b1, b2 in itertools.combinations(range(len(poset)), 2):
        if poset.rank_of(b1) != poset.rank_of(b2):
            continue
        common = sorted(set(poset.lower_covers(b1))
                        & set(poset.lower_covers(b2)))
        if len(common) >= 2:
            return MorseMatching(
                poset, frozenset({(common[0], b1), (common[1], b2)})
            )
    return None


def _misgood_matching(c) -> MorseMatching:
    """The closure matching with one matched edge rewired to a different
    cover, which breaks goodness or the critical-cell count."""
    good = match_closure(c)
    poset = good.poset
    partner = dict(good.matched)
    partner.update({b: a for a, b in good.matched})
    for lo, hi in sorted(good.matched):
        for lo2 in poset.lower_covers(hi):
            if lo2 == lo:
                continue
            edges = set(good.matched) - {(lo, hi)}
            if lo2 in partner:
                pair = (min(lo2, partner[lo2]), max(lo2, partner[lo2]))
                edges.discard(pair)
                edges.discard((pair[1], pair[0]))
                edges = {e for e in edges if lo2 not in e}
            edges.add((lo2, hi))
            return MorseMatching(poset, frozenset(edges))
    return MorseMatching(poset, frozenset(set(good.matched) - {
        sorted(good.matched)[0]
    }))


def _check_closure(c, fault: str | None) -> CheckResult:
    name = f"closure[{cell_str(c)}]"
    if fault == "cycle":
        m = _k22_matching(closure_poset(c))
        if m is None:
            return CheckResult(name, False,
                               "fault requested but no butterfly found")
    elif fault == "goodness":
        m = _misgood_matching(c)
    else:
        m = match_closure(c)
    acyclic, cycle = verify_acyclic(m)
    crit = m.critical_elements
    summ = morse_summary(m)
    checked, good, bad = goodness_report(m)
    problems = []
    if not acyclic:
        problems.append(f"cycle {list(cycle)}")
    if len(crit) != 1 or crit[0].dim != 0:
        problems.append(
            "criticals " + str([cell_str(x) for x in crit])
        )
    if summ.euler != 1 or summ.total_euler != 1:
        problems.append(f"euler {summ.euler}/{summ.total_euler} != 1")
    if good != checked:
        problems.append(f"goodness {good}/{checked}, bad={bad}")
    if problems:
        return CheckResult(name, False, "; ".join(problems),
                           witness=list(cycle) if cycle else bad or None)
    return CheckResult(name, True)


def _check_boundary(c) -> CheckResult:
    name = f"boundary[{cell_str(c)}]"
    p = c.dim
    m = match_boundary(c)
    acyclic, cycle = verify_acyclic(m)
    summ = morse_summary(m)
    dims = sorted(x.dim for x in m.critical_elements)
    want_dims = sorted({0, p - 1}) if p > 1 else [0, 0]
    want_euler = 1 + (-1) ** (p - 1)
    checked, good, bad = goodness_report(m)
    problems = []
    if not acyclic:
        problems.append(f"cycle {list(cycle)}")
    if dims != want_dims:
        problems.append(f"critical dims {dims} != {want_dims}")
    if summ.euler != want_euler or summ.total_euler != want_euler:
        problems.append(
            f"euler {summ.euler}/{summ.total_euler} != {want_euler}"
        )
    if good != checked:
        problems.append(f"goodness {good}/{checked}")
    if problems:
        return CheckResult(name, False, "; ".join(problems),
                           witness=list(cycle) if cycle else bad or None)
    return CheckResult(name, True)


def _check_betti(c, max_simplices: int) -> CheckResult:
    name = f"betti[{cell_str(c)}]"
    p = c.dim
    problems = []
    closure_betti = gf2_betti(
        order_complex(closure_poset(c), max_simplices), max_simplices
    ).betti
    if any(closure_betti):
        problems.append(f"closure betti {closure_betti} != 0")
    if p >= 1:
        bd = gf2_betti(
            order_complex(boundary_poset(c), max_simplices), max_simplices
        ).betti
        want = tuple(1 if k == p - 1 else 0 for k in range(len(bd)))
        if bd != want:
            problems.append(f"boundary betti {bd} != S^{p - 1}")
    if problems:
        return CheckResult(name, False, "; ".join(problems))
    return CheckResult(name, True)


def _suite_for_parabolic(system: CoxeterSystem, J: tuple[int, ...], *,
                         jobs: int, seed: int, orderings: int,
                         betti_max_dim: int, max_simplices: int,
                         fault: str | None) -> list[CheckResult]:
    tag = "J=" + (",".join(map(str, J)) if J else "empty")
    out: list[CheckResult] = []
    try:
        Q = q_poset(system, J)
    except (TnnMorseError, AssertionError) as exc:
        return [CheckResult(f"{tag}:poset", False, str(exc))]
    cells = [c for c in Q.cells if not c.is_bottom]
    out.append(CheckResult(f"{tag}:poset", True, f"{len(cells)} cells"))

    thin, witness = is_thin(Q)
    out.append(CheckResult(f"{tag}:thinness", thin,
                           "" if thin else "interval with bad middle count",
                           witness=list(witness) if witness else None))

    euler = sum((-1) ** c.dim for c in cells)
    out.append(CheckResult(f"{tag}:euler", euler == 1, f"sum {euler}"))

    top = max(cells, key=lambda c: (c.dim, c.sort_key()))
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        closure_results = list(pool.map(
            lambda c: _check_closure(c, fault if c == top else None), cells
        ))
        boundary_results = list(pool.map(
            _check_boundary, [c for c in cells if c.dim >= 1]
        ))
        betti_results = list(pool.map(
            lambda c: _check_betti(c, max_simplices),
            [c for c in cells if c.dim <= betti_max_dim],
        ))

    def fold(name: str, results: list[CheckResult]) -> CheckResult:
        bad = [r for r in results if not r.passed]
        if bad:
            return CheckResult(f"{tag}:{name}", False,
                               f"{len(bad)}/{len(results)} failed; "
                               f"first: {bad[0].name}: {bad[0].detail}",
                               witness=bad[0].witness)
        return CheckResult(f"{tag}:{name}", True, f"{len(results)} checked")

    out.append(fold("closure_matchings", closure_results))
    out.append(fold("boundary_matchings", boundary_results))
    out.append(fold("betti", betti_results))

    stable = order_independence_check(top, orderings=orderings, seed=seed)
    out.append(CheckResult(f"{tag}:order_independence", stable,
                           f"top cell, {orderings} shuffles"))
    return out


def run_suite(system: CoxeterSystem,
              parabolics: list[tuple[int, ...]] | None = None, *,
              jobs: int = 1, seed: int = 0, orderings: int = 3,
              el_orders: int = 3, betti_max_dim: int = 2,
              max_simplices: int = 2_000_000,
              fault: str | None = None) -> Report:
    """Run every check for the listed parabolic subsets (default: all
    subsets of the generator set) plus the group-level EL check."""
    if parabolics is None:
        idx = range(1, system.rank + 1)
        parabolics = [
            J
            for r in range(system.rank + 1)
            for J in itertools.combinations(idx, r)
        ]
    report = Report(system.label, list(parabolics))

    for number, order in enumerate(standard_orders(system, el_orders)):
        labeling = dyer_labeling(interval(system.identity, system.longest),
                                 order)
        ok, witness = verify_el(labeling)
        report.checks.append(CheckResult(
            f"el:order{number}", ok,
            "unique increasing lex-least chains" if ok else "EL failure",
            witness=None if ok else str(witness),
        ))

    for J in parabolics:
        report.checks.extend(_suite_for_parabolic(
            system, tuple(J), jobs=jobs, seed=seed, orderings=orderings,
            betti_max_dim=betti_max_dim, max_simplices=max_simplices,
            fault=fault,
        ))
    return report
