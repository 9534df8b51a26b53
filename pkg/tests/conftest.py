import pytest
from hypothesis import strategies as st

from omega_robust import fixtures
from omega_robust.automaton import Dpa, parse_lasso
from omega_robust.natural import minimize_ranks


@pytest.fixture(scope="session")
def load():
    cache = {}

    def get(name, minimized=True):
        key = (name, minimized)
        if key not in cache:
            aut = fixtures.load(name)
            cache[key] = minimize_ranks(aut) if minimized else aut
        return cache[key]

    return get


def lasso(aut, text):
    return parse_lasso(text, aut.alphabet)


@st.composite
def small_dpas(draw, max_states=4, letters="ab", max_rank=3):
    n = draw(st.integers(1, max_states))
    alphabet = tuple(letters)
    delta = [[draw(st.integers(0, n - 1)) for _ in alphabet] for _ in range(n)]
    kappa = [draw(st.integers(0, max_rank)) for _ in range(n)]
    return Dpa(alphabet, delta, kappa, 0)


def words(letters="ab", min_size=0, max_size=8):
    return st.lists(st.sampled_from(tuple(letters)), min_size=min_size, max_size=max_size).map(tuple)


def lassos(letters="ab", max_spoke=4, max_period=4):
    from omega_robust.automaton import LassoWord

    return st.builds(
        LassoWord,
        words(letters, 0, max_spoke),
        words(letters, 1, max_period),
    )


# criterion number -> (description, passed); filled by the acceptance tests
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        text, passed = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2}: {'PASS' if passed else 'FAIL'}  {text}")
