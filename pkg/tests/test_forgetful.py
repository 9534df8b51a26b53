import pytest
from hypothesis import given, settings

from omega_robust.automaton import accepts, parse_lasso
from omega_robust.colors import Color, letter_colors
from omega_robust.errors import InvalidForgetful
from omega_robust.forgetful import (
    ForgetfulDpa,
    accepts_forgetful,
    colored_run,
    forgetful_transform,
    parse_forgetful,
    positional_colors,
    robustness_dpa,
    steady_period_colors,
)
from omega_robust.natural import minimize_ranks
from omega_robust.vigor import build_vigor
from omega_robust import fixtures

from conftest import lassos, small_dpas

G, Y, R, W, B = Color.GREEN, Color.YELLOW, Color.RED, Color.WHITE, Color.BLACK


def robust(name):
    return robustness_dpa(minimize_ranks(fixtures.load(name)))


def test_always_a_has_one_state_and_a_rejecting_sentinel():
    p = robust("always_a")
    assert p.size == 2
    assert p.is_sentinel(1) and p.kappa[1] == -1 and p.eps[1] == 0
    assert p.read(0, "b") == (1, 0, B)
    assert p.read(0, "a") == (0, 0, G)


def test_grants_black_edges():
    p = robust("grants")
    core = [q for q in range(p.size) if not p.is_sentinel(q)]
    assert len(core) == 3
    black = {(q, s) for q in core for s in p.alphabet if p.read(q, s)[2] is B}
    assert black
    assert all(s in ("rg", "!rg") and p.kappa[q] == 0 for q, s in black)


def test_inf_ab_colored_runs():
    p = robust("inf_ab")
    w = parse_lasso(";ab", p.alphabet)
    run = colored_run(p, w, 6)
    assert run.ranks == (1, 0, 0, 0, 0, 0)
    assert run.colors == (R, G, G, G, G, G)
    w = parse_lasso(";aabb", p.alphabet)
    run = colored_run(p, w, 10)
    assert run.ranks == (1, 1, 0, 1, 0, 1, 0, 1, 0, 1)
    assert run.colors == (R, R, G, Y, G, Y, G, Y, G, Y)


def test_steady_colors_and_positions():
    p = robust("inf_a")
    w = parse_lasso("bb;ab", p.alphabet)
    assert positional_colors(p, w, 0, 2) == [R, R]
    assert sorted(map(str, steady_period_colors(p, w))) == ["Green", "Yellow"]


def test_acceptance_through_sentinels():
    p = robust("always_a")
    assert accepts_forgetful(p, parse_lasso(";a", p.alphabet))
    assert not accepts_forgetful(p, parse_lasso("aab;a", p.alphabet))
    debts = robust("debts")
    assert accepts_forgetful(debts, parse_lasso("a;c", debts.alphabet))


@pytest.mark.parametrize("name", fixtures.UNIVERSE)
def test_serialization_round_trip(name):
    p = robust(name)
    assert parse_forgetful(p.serialize()) == p
    dot = p.to_dot()
    assert "digraph" in dot
    if any(p.is_sentinel(q) for q in range(p.size)):
        assert "style=dashed" in dot


@pytest.mark.parametrize(
    "delta, eps, kappa, message",
    [
        ([[0], None], [None, None], [0, -1], "no outgoing edges"),
        ([[1], [0]], [None, 0], [0, -1], "both"),
        ([[1], None], [None, 0], [0, 2], "ranked -2 or -1"),
        ([[1], None], [None, 1], [0, -1], "non-sentinel"),
        ([[1], [1]], [None, None], [0, -2], "needs an ε-edge"),
        ([[5]], [None], [0], "unknown state"),
    ],
)
def test_invalid_forgetful_automata(delta, eps, kappa, message):
    with pytest.raises(InvalidForgetful, match=message):
        ForgetfulDpa(("a",), delta, eps, kappa, 0)


def test_negative_initial_state_is_allowed():
    p = ForgetfulDpa(("a",), [[0]], [None], [-2], 0)
    assert accepts_forgetful(p, parse_lasso(";a", ("a",)))


def test_from_edges_rejects_partial_rows():
    with pytest.raises(InvalidForgetful):
        ForgetfulDpa.from_edges(("a", "b"), 1, 0, [0], [(0, "a", 0)])


@given(small_dpas(max_states=3), lassos(max_spoke=3, max_period=3))
@settings(max_examples=60, deadline=None)
def test_robustness_dpa_keeps_language_and_colors(aut, w):
    aut = minimize_ranks(aut)
    p = robustness_dpa(aut)
    assert accepts_forgetful(p, w) == accepts(aut, w)
    n = len(w.spoke) + 2 * len(w.period)
    assert list(colored_run(p, w, n).colors) == letter_colors(aut, w, n)


@given(small_dpas(max_states=3))
@settings(max_examples=30, deadline=None)
def test_transform_has_no_negative_core_states(aut):
    p = forgetful_transform(build_vigor(minimize_ranks(aut)))
    for q in range(p.size):
        if not p.is_sentinel(q) and q != p.initial:
            assert p.kappa[q] >= 0
