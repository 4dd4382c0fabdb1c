"""Matchings: the position rule, closures, boundaries, acyclicity."""

import random

import pytest

from tnnmorse.bruhat import HassePoset, bruhat_leq, interval
from tnnmorse.cells import closure_poset, make_cell, q_poset
from tnnmorse.errors import MatchingConflict, NotEL, ZeroDimensional
from tnnmorse.export import cell_str
from tnnmorse.morse import (
    MorseMatching,
    chari_matching,
    goodness_report,
    match_boundary,
    match_closure,
    match_sx,
    morse_summary,
    order_independence_check,
    sx_pairs,
    sx_poset,
    verify_acyclic,
)
from tnnmorse.shelling import dyer_labeling, matching_reflection_order


def test_sx_poset_is_dual_interval(a2):
    p = sx_poset(a2.gen(1), a2.longest)
    iv = interval(a2.gen(1), a2.longest)
    assert set(p.elements) == set(iv.poset.elements)
    i_top = p.elements.index(a2.longest)
    assert p.ranks[i_top] == 0


def test_sx_pairs_example(a2):
    pairs = sx_pairs(a2.identity, a2.longest, (1, 2, 1))
    assert sorted((v.word, vp.word) for v, vp in pairs) == [
        ((), (1,)), ((1, 2), (1, 2, 1)), ((2,), (2, 1)),
    ]
    for v, vp in pairs:
        assert vp.length == v.length + 1
        assert bruhat_leq(v, vp)


def test_match_sx_perfect_below_the_top(a3, b2):
    for W in (a3, b2):
        for w in W.elements():
            word = w.word
            for x in W.elements():
                if not bruhat_leq(x, w):
                    continue
                m = match_sx(x, w, word)
                want = 1 if x == w else 0
                assert len(m.critical_indices) == want
                ok, cycle = verify_acyclic(m)
                assert ok and cycle is None


def test_match_sx_with_other_words(a3):
    e, w0 = a3.identity, a3.longest
    assert len(sx_pairs(e, w0, w0.word)) == 12
    for word in list(a3.all_reduced_words(w0))[:4]:
        m = match_sx(e, w0, word)
        assert len(m.critical_indices) == 0
        assert verify_acyclic(m)[0]


def test_match_closure_on_a_vertex(a2):
    Q = q_poset(a2, ())
    vertex = next(c for c in Q.cells if c.dim == 0)
    m = match_closure(vertex)
    assert m.critical_elements == (vertex,)
    assert m.matched == frozenset()


def test_match_closure_top_cell(a3):
    Q = q_poset(a3, (1, 3))
    top = Q.cells[Q.top_index()]
    m = match_closure(top)
    assert verify_acyclic(m)[0]
    crit = m.critical_elements
    assert len(crit) == 1 and crit[0].dim == 0
    summ = morse_summary(m)
    assert dict(summ.m_p) == {0: 1}
    assert summ.euler == summ.total_euler == 1
    checked, good, bad = goodness_report(m)
    assert checked == good and bad == []
    assert 2 * checked == len(m.poset) - 1


def test_match_closure_critical_is_minrep_part(b2):
    # x u^{-1} = s1 factors as e * s1, so the critical vertex is the
    # pair-diagonal cell of e, living in the block with third factor e
    par = b2.parabolic((1,))
    c = make_cell(par, b2.gen(1), b2.identity, b2.element((1, 2)))
    m = match_closure(c)
    assert [cell_str(x) for x in m.critical_elements] == ["1:1:e"]


def test_match_closure_rejects_bottom(a2):
    from tnnmorse.cells import bottom_cell

    with pytest.raises(ValueError):
        match_closure(bottom_cell(a2.parabolic(())))


def test_match_closure_alternate_words(a2):
    Q = q_poset(a2, ())
    top = Q.cells[Q.top_index()]
    choose = lambda y: max(a2.all_reduced_words(y))
    m = match_closure(top, word_choice=choose)
    assert verify_acyclic(m)[0]
    assert len(m.critical_elements) == 1
    checked, good, _ = goodness_report(m, word_choice=choose)
    assert checked == good


def test_match_boundary(a1, a3):
    Q1 = q_poset(a1, ())
    edge = Q1.cells[Q1.top_index()]
    m1 = match_boundary(edge)
    assert sorted(c.dim for c in m1.critical_elements) == [0, 0]

    Q3 = q_poset(a3, (1, 3))
    top = Q3.cells[Q3.top_index()]
    m3 = match_boundary(top)
    assert sorted(c.dim for c in m3.critical_elements) == [0, 3]
    summ = morse_summary(m3)
    assert summ.euler == summ.total_euler == 1 + (-1) ** (top.dim - 1)

    vertex = next(c for c in Q3.cells if c.dim == 0)
    with pytest.raises(ZeroDimensional):
        match_boundary(vertex)


def test_chari_agrees_with_position_rule(a2, a3):
    for W, word in ((a2, (1, 2, 1)), (a3, (1, 2, 3, 1, 2, 1))):
        w0 = W.longest
        order = matching_reflection_order(w0, word)
        lab = dyer_labeling(interval(W.identity, w0), order, dualize=True)
        mch = chari_matching(lab.poset, lab)
        msx = match_sx(W.identity, w0, word)
        as_pairs = lambda m: {
            frozenset((m.poset.elements[a], m.poset.elements[b]))
            for a, b in m.matched
        }
        assert as_pairs(mch) == as_pairs(msx)
        assert len(mch.critical_indices) == 0


def test_chari_rejects_non_el_labeling(a2):
    from tnnmorse.shelling import ELLabeling, reflection_order_from_word

    diamond = HassePoset(
        "ambn", [0, 1, 1, 2], [(0, 1), (0, 2), (1, 3), (2, 3)]
    )
    order = reflection_order_from_word(a2, (1, 2, 1))
    t = order.sequence[0]
    lab = ELLabeling(diamond, {e: t for e in diamond.covers}, order)
    with pytest.raises(NotEL):
        chari_matching(diamond, lab)


def test_verify_acyclic_flags_a_butterfly():
    butterfly = HassePoset(
        "abxy", [0, 0, 1, 1], [(0, 2), (0, 3), (1, 2), (1, 3)]
    )
    cyclic = MorseMatching(butterfly, frozenset({(0, 2), (1, 3)}))
    ok, cycle = verify_acyclic(cyclic)
    assert not ok
    assert cycle is not None and len(cycle) >= 4


def test_matching_constructor_rejects_bad_edges(a2):
    Q = q_poset(a2, ())
    top = Q.cells[Q.top_index()]
    cl = closure_poset(top)
    good = match_closure(top)
    some = next(iter(good.matched))
    with pytest.raises(MatchingConflict):
        MorseMatching(cl, frozenset({(some[1], some[0])}))  # not a cover
    (a, b) = some
    other = next(
        (lo, b) for lo in cl.lower_covers(b) if lo != a
    )
    with pytest.raises(MatchingConflict):
        MorseMatching(cl, frozenset({some, other}))  # b matched twice


def test_order_independence(a2, a3):
    assert order_independence_check(
        (a2.identity, a2.longest, (1, 2, 1)), orderings=10
    )
    Q = q_poset(a3, ())
    top = Q.cells[Q.top_index()]
    assert order_independence_check(top, orderings=5)


def test_randomized_runs_match_deterministic(a3):
    e, w0 = a3.identity, a3.longest
    reference = match_sx(e, w0, w0.word).matched
    for k in range(5):
        rng = random.Random(k)
        assert match_sx(e, w0, w0.word, rng=rng).matched == reference
