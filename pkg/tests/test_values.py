from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from omega_robust.automaton import LassoWord, complement, parse_lasso
from omega_robust.errors import AnalysisError
from omega_robust.natural import infix_rank
from omega_robust.values import (
    ZERO,
    Mode,
    Preference,
    Robustness,
    RobustnessValue,
    compare,
    order,
    robustness_value,
    satisfies_bar,
)
from omega_robust.colors import AvgScore
from omega_robust import fixtures

from conftest import lassos

INF_A_VALUES = [
    ("bb;ab", (1, (0, F(1, 2)), (0, -3))),
    ("bbbbb;ab", (1, (0, F(1, 2)), (0, F(-15, 2)))),
    ("aa;ab", (1, (0, F(1, 2)), (0, 1))),
    ("aaaaa;ab", (1, (0, F(1, 2)), (0, F(5, 2)))),
    ("aa;b", (-1, (0, -1), (0, 4))),
    ("aaaaa;b", (-1, (0, -1), (0, 10))),
]


@pytest.fixture(scope="module")
def inf_a():
    return Robustness(fixtures.load("inf_a"))


def flat(v: RobustnessValue):
    return (v.acceptance, (v.period_value.wb_avg, v.period_value.gr_avg), v.spoke_value)


@pytest.mark.parametrize("word, expected", INF_A_VALUES)
def test_values_as_given(inf_a, word, expected):
    v = inf_a.value(parse_lasso(word, inf_a.alphabet), Mode.AS_GIVEN)
    assert flat(v) == expected


def test_value_text(inf_a):
    v = inf_a.value(parse_lasso("bb;ab", inf_a.alphabet), Mode.AS_GIVEN)
    assert str(v) == "accept=1 period=(0,1/2) spoke=(0,-3)"


def test_orders_between_the_pairs(inf_a):
    words = [parse_lasso(x, inf_a.alphabet) for x, _ in INF_A_VALUES]
    assert inf_a.compare(words[0], words[1], Mode.AS_GIVEN) is Preference.GREATER
    assert inf_a.compare(words[3], words[2], Mode.AS_GIVEN) is Preference.GREATER
    assert inf_a.compare(words[5], words[4], Mode.AS_GIVEN) is Preference.GREATER
    assert inf_a.compare(words[4], words[0], Mode.AS_GIVEN) is Preference.LESS


def test_shortest_decomposition_differs_from_the_written_one(inf_a):
    w = parse_lasso("bb;ab", inf_a.alphabet)
    d = inf_a.decompose(w, Mode.SHORTEST)
    assert (d.spoke, d.period) == (("b",), ("b", "a"))
    assert infix_rank(inf_a.source, d.spoke, d.period) == 0
    assert inf_a.decompose(w, Mode.AS_GIVEN).word == w


def test_loop_entry_decompositions(inf_a):
    d = inf_a.decompose(parse_lasso("bb;ab", inf_a.alphabet), Mode.LOOP_ENTRY)
    assert (d.spoke, d.period) == (("b", "b"), ("a", "b"))
    d = inf_a.decompose(parse_lasso("aa;ab", inf_a.alphabet), Mode.LOOP_ENTRY)
    assert (d.spoke, d.period) == (("a", "a", "a"), ("b", "a"))


def test_module_helpers_match_the_class():
    aut = fixtures.load("inf_a")
    w1, w2 = parse_lasso(";a", aut.alphabet), parse_lasso(";ab", aut.alphabet)
    assert compare(aut, w1, w2) is Preference.GREATER
    assert robustness_value(aut, w1) == Robustness(aut).value(w1)


def test_zero_and_the_bar():
    assert satisfies_bar(ZERO)
    worst_accepted = RobustnessValue(1, AvgScore(F(-1), F(-1)), (F(-100), F(0)))
    best_rejected = RobustnessValue(-1, AvgScore(F(1), F(1)), (F(100), F(100)))
    assert satisfies_bar(worst_accepted)
    assert not satisfies_bar(best_rejected)
    assert order(worst_accepted, best_rejected) is Preference.GREATER
    assert -(-worst_accepted) == worst_accepted


def test_preference_inverse():
    for p in Preference:
        assert p.inverse().inverse() is p
    assert Preference.EQUAL.inverse() is Preference.EQUAL


def test_shortest_search_reports_failure():
    # two language-equivalent states in different components: the run rank of
    # a^ω is 0 while no infix of it reaches that rank
    from omega_robust.automaton import Dpa

    aut = complement(Dpa("abc", [[0, 0, 2], [1, 1, 2], [2, 2, 1]], [1, 1, 0], 0))
    with pytest.raises(AnalysisError):
        Robustness(aut).value(LassoWord((), ("a",)), Mode.SHORTEST)


@pytest.mark.parametrize("name", ["inf_ab", "mod2", "danger"])
@given(w=lassos(max_spoke=3, max_period=3))
@settings(max_examples=25, deadline=None)
def test_duality_and_bar_on_fixtures(name, w):
    aut = fixtures.load(name)
    if set(w.spoke + w.period) - set(aut.alphabet):
        w = LassoWord(tuple(aut.alphabet[0] for _ in w.spoke), tuple(aut.alphabet[-1] for _ in w.period))
    rb, dual = Robustness(aut), Robustness(complement(aut))
    for mode in (Mode.SHORTEST, Mode.LOOP_ENTRY):
        v = rb.value(w, mode)
        assert satisfies_bar(v) == rb.accepts(w)
        assert dual.value(w, mode) == -v
