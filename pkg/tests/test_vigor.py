from collections import Counter

import pytest
from hypothesis import given, settings

from omega_robust.automaton import lang_equiv
from omega_robust.errors import Diverged
from omega_robust.natural import infix_ranker, minimize_ranks
from omega_robust.suffixes import LetterAnalyzer, word_letter_rank
from omega_robust.automaton import shortlex_words
from omega_robust.vigor import (
    MooreMachine,
    build_vigor,
    component_value,
    learn_vigor_component,
    membership_value,
    minimize_moore,
    minimize_vigor,
    vigor_construction,
)
from omega_robust import fixtures

from conftest import small_dpas


def ranks(seq):
    return Counter(int(k) for k in seq)


def test_mod2_vigor_shape():
    vc = vigor_construction(fixtures.load("mod2"))
    assert vc.dpa.size == 7
    assert ranks(vc.dpa.kappa) == Counter({2: 3, 1: 2, 0: 2})
    assert [c.dpa.size for c in vc.components] == [3, 3]
    for c in vc.components:
        assert set(c.ranks) == {0, 1, 2}
    assert lang_equiv(vc.source, vc.source.initial, vc.dpa, vc.dpa.initial)


def test_inf_ab_vigor_shape():
    v = build_vigor(fixtures.load("inf_ab"))
    assert v.size == 5
    assert ranks(v.kappa) == Counter({1: 3, 0: 2})
    assert lang_equiv(fixtures.load("inf_ab"), 0, v, v.initial)


def test_every_letter_blows_up():
    aut = fixtures.every_letter(3)
    assert aut.size == 4
    v = build_vigor(aut)
    assert v.size >= 7
    assert lang_equiv(aut, aut.initial, v, v.initial)


@pytest.mark.parametrize("name", fixtures.UNIVERSE)
def test_vigor_ranks_are_letter_ranks(name):
    aut = minimize_ranks(fixtures.load(name))
    v = build_vigor(aut)
    assert lang_equiv(aut, aut.initial, v, v.initial)
    depth = 4 if len(aut.alphabet) > 3 else 5
    for word in shortlex_words(aut.alphabet, depth):
        assert v.kappa[v.run(word)] == word_letter_rank(aut, word), word


def test_membership_queries_on_a_seq():
    aut = minimize_ranks(fixtures.load("a_seq"))
    assert membership_value(aut, (), "baaa") == 0
    assert component_value(aut, (), "baaa") == 0
    assert component_value(aut, (), "") == 3


def test_component_is_learned_from_the_representative():
    aut = minimize_ranks(fixtures.load("mod2"))
    comp = learn_vigor_component(aut, ("a",))
    assert comp.representative == ("a",)
    assert comp.dpa.size == 3
    assert comp.access[0] == ()


def test_learning_rejects_a_non_positive_depth():
    with pytest.raises(ValueError):
        learn_vigor_component(fixtures.load("inf_a"), (), depth=0)


def test_bound_is_enforced():
    with pytest.raises(Diverged):
        build_vigor(fixtures.every_letter(3), bound=3)


def test_moore_minimization_merges_equal_behaviour():
    m = MooreMachine(("a",), ((1,), (2,), (1,)), (0, 1, 1), 0)
    small = minimize_moore(m)
    assert small.size == 2
    assert [small.output[small.run(w)] for w in ["", "a", "aa"]] == [0, 1, 1]


@given(small_dpas(max_states=3))
@settings(max_examples=25, deadline=None)
def test_vigor_of_random_automata(aut):
    aut = minimize_ranks(aut)
    v = build_vigor(aut)
    small = minimize_vigor(v)
    assert lang_equiv(aut, aut.initial, v, v.initial)
    ranker = infix_ranker(aut)
    for word in shortlex_words(aut.alphabet, 4):
        expected = LetterAnalyzer(ranker).feed(word)
        if word:
            assert v.kappa[v.run(word)] == expected[-1]
            assert small.kappa[small.run(word)] == expected[-1]
