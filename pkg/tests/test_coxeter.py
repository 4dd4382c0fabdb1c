"""Group construction checked against explicit permutation models."""

import pytest

from tnnmorse import coxeter_system
from tnnmorse.errors import (
    GroupTooLarge,
    RankOutOfRange,
    SystemMismatch,
    UnknownType,
    WordTooLong,
)
from oracles import cayley, image, realize

MODELED = ("A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2")


@pytest.mark.parametrize("label", MODELED)
def test_order_and_length_match_permutation_model(label):
    W = coxeter_system(label)
    ident, gens, mul = realize(W)
    dist = cayley(ident, gens, mul)
    assert len(dist) == W.group_order
    for w in W.elements():
        assert dist[image(w.word, ident, gens, mul)] == w.length


@pytest.mark.parametrize("label", ("A2", "B2"))
def test_multiplication_matches_permutation_model(label):
    W = coxeter_system(label)
    ident, gens, mul = realize(W)
    phi = {w: image(w.word, ident, gens, mul) for w in W.elements()}
    for a in W.elements():
        for b in W.elements():
            assert phi[a * b] == mul(phi[a], phi[b])


def test_known_group_orders():
    assert coxeter_system("A1").group_order == 2
    assert coxeter_system("A2").group_order == 6
    assert coxeter_system("B3").group_order == 48
    assert coxeter_system("C3").group_order == 48
    assert coxeter_system("D4").group_order == 192
    assert coxeter_system("G2").group_order == 12
    assert coxeter_system("F4").group_order == 1152


def test_braid_and_involution_relations(a2, b2):
    s1, s2 = a2.gen(1), a2.gen(2)
    assert s1 * s1 == a2.identity
    assert s1 * s2 * s1 == s2 * s1 * s2
    r = b2.gen(1) * b2.gen(2)
    assert r * r != b2.identity
    assert (r * r) * (r * r) == b2.identity


def test_longest_element_properties():
    for label in ("A1", "A2", "A3", "B2", "B3", "G2", "F4"):
        W = coxeter_system(label)
        w0 = W.longest
        assert w0 * w0 == W.identity
        assert w0.length == W.num_positive_roots == len(W.reflections())


def test_normal_form_is_shortlex_least(a3):
    for w in a3.elements():
        word = w.word
        assert a3.is_reduced(word)
        assert a3.element(word) == w
        # all reduced words share the length, so plain lex-min suffices
        assert word == min(a3.all_reduced_words(w))


def test_canonicity_across_reduced_words(b2):
    for w in b2.elements():
        for word in b2.all_reduced_words(w):
            assert b2.element(word) == w
            assert len(word) == w.length


def test_reduced_word_counts(a2, a3):
    assert sorted(a2.all_reduced_words(a2.longest)) == [(1, 2, 1), (2, 1, 2)]
    assert len(a3.all_reduced_words(a3.longest)) == 16
    assert list(a3.all_reduced_words(a3.identity)) == [()]


def test_exchange_property(a3):
    for w in a3.elements():
        for i in w.left_descents():
            assert any(word[0] == i for word in a3.all_reduced_words(w))


def test_descent_sets(a2):
    w0 = a2.longest
    assert w0.right_descents() == (1, 2)
    assert a2.gen(1).right_descents() == (1,)
    s12 = a2.element((1, 2))
    assert s12.right_descents() == (2,)
    assert s12.left_descents() == (1,)


def test_reflection_sets(a2, b2):
    assert sorted(t.element.word for t in a2.reflections()) == [
        (1,), (1, 2, 1), (2,),
    ]
    assert len(b2.reflections()) == 4
    for t in b2.reflections():
        assert t.element * t.element == b2.identity
        assert t.as_word == tuple(reversed(t.as_word))
        assert b2.element(t.as_word) == t.element


def test_parabolic_decomposition(a3):
    par = a3.parabolic((1, 3))
    assert len(par.min_reps) == 6
    assert len(par.elements) == 4
    for w in a3.elements():
        a, b = par.factorize(w)
        assert a * b == w
        assert a.length + b.length == w.length
        assert par.is_min_rep(a)
        assert b in par
    assert len(a3.parabolic(()).elements) == 1
    assert len(a3.parabolic((1, 2, 3)).min_reps) == 1


def test_length_additive_factorizations(a2):
    par = a2.parabolic((1, 2))
    w0 = a2.longest
    facts = par.length_additive_factorizations(w0)
    # every prefix split of a longest element is length-additive
    assert len(facts) == 6
    assert (a2.identity, w0) in facts
    assert (w0, a2.identity) in facts
    for u1, u2 in facts:
        assert u1 * u2 == w0
        assert u1.length + u2.length == w0.length
    s1 = a2.gen(1)
    assert a2.parabolic((1,)).length_additive_factorizations(s1) == (
        (a2.identity, s1), (s1, a2.identity),
    )


def test_factory_is_memoized_per_spelling():
    assert coxeter_system("A2") is coxeter_system("A2")
    assert coxeter_system("B", 2) is coxeter_system("B", 2)


def test_error_conditions(a2, b2):
    with pytest.raises(UnknownType):
        coxeter_system("H3")
    with pytest.raises(RankOutOfRange):
        coxeter_system("G", 3)
    with pytest.raises(RankOutOfRange):
        coxeter_system("A", 0)
    with pytest.raises(GroupTooLarge):
        coxeter_system("E6")  # 51840 exceeds the default cap
    with pytest.raises(SystemMismatch):
        a2.gen(1) * b2.gen(1)
    with pytest.raises(RankOutOfRange):
        a2.gen(3)
    with pytest.raises(RankOutOfRange):
        a2.element((5,))
    with pytest.raises(RankOutOfRange):
        a2.parabolic((7,))
    F4 = coxeter_system("F4")
    with pytest.raises(WordTooLong):
        F4.all_reduced_words(F4.longest)
