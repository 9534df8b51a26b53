import pytest
from hypothesis import given, settings

from omega_robust.automaton import accepts, bounded_lassos, lang_equiv, parse_lasso
from omega_robust.natural import (
    congruence_classes,
    infix_rank,
    infix_ranker,
    minimize_ranks,
    wagner_class,
    word_rank,
)
from omega_robust.oracle import oracle_infix_rank
from omega_robust import fixtures

from conftest import small_dpas

WORD_RANKS = [
    ("inf_a", ";b", 1),
    ("inf_a", "aa;b", 1),
    ("inf_a", ";a", 0),
    ("inf_a", ";ab", 0),
    ("always_a", ";a", 0),
    ("always_a", "b;a", -1),
    ("always_a", ";ab", -1),
    ("always_a", ";b", -1),
    ("a_seq", ";b", 3),
    ("a_seq", ";ab", 2),
    ("a_seq", ";aab", 1),
    ("a_seq", ";a", 0),
    ("a_seq", ";aaab", 0),
]


@pytest.mark.parametrize("name, word, rank", WORD_RANKS)
def test_word_ranks_of_reference_languages(load, name, word, rank):
    aut = load(name)
    assert word_rank(aut, parse_lasso(word, aut.alphabet)) == rank


@pytest.mark.parametrize("v, rank", [("b", 3), ("a", 2), ("aa", 1), ("aaa", 0)])
def test_a_seq_infix_ranks(load, v, rank):
    assert infix_rank(load("a_seq"), "", v) == rank


# one representative per case: even-a spokes are ε, odd-a spokes are a
MOD2_CASES = [
    ("", "b", 2),
    ("a", "c", 2),
    ("", "bcb", 1),
    ("a", "cb", 1),
    ("", "ba", 0),
    ("a", "a", 0),
]


@pytest.mark.parametrize("u, v, rank", MOD2_CASES)
def test_mod2_infix_ranks(load, u, v, rank):
    aut = load("mod2")
    assert infix_rank(aut, u, v) == rank
    assert oracle_infix_rank(aut, tuple(u), tuple(v)) == rank


def test_infix_rank_sentinels(load):
    aut = load("always_a")
    assert infix_rank(aut, "", "b") == -1
    debts = load("debts")
    assert infix_rank(debts, "", "a") == -2


def test_infix_rank_without_a_return_is_infinite(load):
    # b leaves the initial class for good, yet does not settle acceptance
    aut = load("debts")
    assert infix_rank(aut, "", "b").is_infinite
    assert infix_rank(aut, "b", "c") == 0


def test_mod2_has_two_classes(load):
    classes = congruence_classes(load("mod2"))
    assert classes.count == 2
    assert classes.representatives == ((), ("a",))


def test_a_seq_has_one_class(load):
    assert congruence_classes(load("a_seq")).count == 1


@pytest.mark.parametrize("name", sorted(fixtures.FILES))
def test_minimize_is_idempotent_and_keeps_the_language(name):
    aut = fixtures.load(name)
    m = minimize_ranks(aut)
    assert minimize_ranks(m) == m
    assert m.delta == aut.delta
    assert lang_equiv(aut, aut.initial, m, m.initial)


@given(small_dpas())
@settings(max_examples=60, deadline=None)
def test_minimize_never_raises_a_rank(aut):
    m = minimize_ranks(aut)
    for q in aut.reachable:
        assert m.kappa[q] <= aut.kappa[q]
    assert minimize_ranks(m) == m
    for w in bounded_lassos(aut.alphabet, 2, 2):
        assert accepts(m, w) == accepts(aut, w)


@given(small_dpas(max_states=3))
@settings(max_examples=40, deadline=None)
def test_infix_rank_decreases_along_the_period(aut):
    aut = minimize_ranks(aut)
    ranker = infix_ranker(aut)
    for v in ["a", "b", "ab", "ba"]:
        for y in ["a", "b"]:
            longer, shorter = ranker.infix_rank("", v + y), ranker.infix_rank("", v)
            # no completion may exist any more; otherwise the rank cannot grow
            if not longer.is_infinite and not shorter.is_infinite:
                assert longer <= shorter or longer < 0


@pytest.mark.parametrize(
    "name, text",
    [("inf_a", "DM-2"), ("always_a", "DM±1"), ("a_seq", "DM-4"), ("mod2", "DM+3")],
)
def test_wagner_classes(name, text):
    assert str(wagner_class(fixtures.load(name))) == text
