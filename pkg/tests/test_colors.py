from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omega_robust.automaton import parse_lasso
from omega_robust.colors import Color, forgetful_prefix, letter_colors, score, theta
from omega_robust.errors import EmptyInfix
from omega_robust.rank import INFINITE, NEG_ONE, NEG_TWO, Rank

G, Y, R, W, B = Color.GREEN, Color.YELLOW, Color.RED, Color.WHITE, Color.BLACK


@pytest.mark.parametrize(
    "before, after, color",
    [
        (3, -2, W),
        (0, -1, B),
        (1, 0, G),
        (2, 2, G),
        (0, 1, Y),
        (3, 1, R),
        (1, 1, R),
        (0, INFINITE, Y),
        (INFINITE, 2, G),
    ],
)
def test_theta(before, after, color):
    assert theta(Rank(before), Rank(after)) is color


rank_values = st.integers(-2, 6).map(Rank) | st.just(INFINITE)


@given(rank_values, rank_values)
def test_duality_of_colors(a, b):
    # shifting both ranks by one swaps the parities of non-increases
    if a.is_finite and b.is_finite:
        assert theta(Rank(a + 1), Rank(b + 1)) is theta(a, b).dual
    if b == NEG_TWO:
        assert theta(a, NEG_ONE) is theta(a, b).dual


def test_colors_of_inf_ab(load):
    aut = load("inf_ab")
    assert letter_colors(aut, parse_lasso(";ab", aut.alphabet), 6) == [R, G, G, G, G, G]
    assert letter_colors(aut, parse_lasso(";aabb", aut.alphabet), 10) == [R, R, G, Y, G, Y, G, Y, G, Y]


def test_colors_of_inf_a(load):
    aut = load("inf_a")
    assert letter_colors(aut, parse_lasso("bb;ab", aut.alphabet), 6) == [R, R, G, Y, G, Y]
    assert letter_colors(aut, parse_lasso("aa;b", aut.alphabet), 4) == [G, G, Y, R]


def test_dropped_letters_leave_the_previous_rank(load):
    aut = load("always_a")
    w = parse_lasso("b;a", aut.alphabet)
    assert letter_colors(aut, w, 4) == [B, G, G, G]
    assert forgetful_prefix(aut, w.prefix(4)) == ("a", "a", "a")


def test_score_averages():
    _, s, avg = score([G, Y, R, G, W])
    assert (s.wb, s.gr) == (1, 1)
    assert avg.wb_avg == Fraction(1, 5) and avg.gr_avg == Fraction(1, 5)
    assert str(avg) == "(1/5,1/5)"


def test_score_of_nothing_is_an_error():
    with pytest.raises(EmptyInfix):
        score([])
