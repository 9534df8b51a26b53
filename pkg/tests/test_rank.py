import pytest
from hypothesis import given
from hypothesis import strategies as st

from omega_robust.rank import INFINITE, NEG_ONE, NEG_TWO, Rank, accepting_parity, fin


def test_sentinels_order_below_naturals_and_infinity_above():
    assert NEG_TWO < NEG_ONE < fin(0) < fin(7) < INFINITE


def test_sentinel_parity_reads_as_acceptance():
    assert accepting_parity(NEG_TWO)
    assert not accepting_parity(NEG_ONE)
    assert accepting_parity(fin(4))


def test_infinite_prints_and_parses():
    assert str(INFINITE) == "inf"
    assert Rank.parse("inf") is INFINITE
    assert Rank.parse(" 3 ") == 3
    assert f"{INFINITE:>4}" == " inf"


def test_only_finite_ranks_have_parity():
    assert fin(2).is_even
    with pytest.raises(ValueError):
        INFINITE.is_even
    with pytest.raises(ValueError):
        NEG_ONE.is_even


def test_rejects_values_below_minus_two():
    with pytest.raises(ValueError):
        Rank(-3)
    with pytest.raises(ValueError):
        fin(-1)


@given(st.integers(-2, 1000))
def test_text_round_trip(value):
    r = Rank(value)
    assert Rank.parse(str(r)) == r
    assert r.is_sentinel == (value < 0)
    assert r.is_finite == (value >= 0)
