"""Reference automata used by the tests, the property suite and the CLI."""

from __future__ import annotations

from importlib import resources

from ..automaton import Dpa, parse_dpa

FILES = {
    "inf_a": "linf_a.dpa",
    "always_a": "lga.dpa",
    "a_seq": "laseq.dpa",
    "inf_ab": "linf_ab.dpa",
    "mod2": "lmod2.dpa",
    "grants": "grants.dpa",
    "danger": "danger.dpa",
    "debts": "debts.dpa",
    "response": "response.dpa",
}

# automata of the default property suite
UNIVERSE = (
    "inf_a",
    "always_a",
    "a_seq",
    "inf_ab",
    "mod2",
    "grants",
    "danger",
    "debts",
    "every_2",
    "every_3",
)


def text(name: str) -> str:
    return resources.files(__package__).joinpath(FILES[name]).read_text()


def every_letter(n: int) -> Dpa:
    """All of the first ``n`` letters occur infinitely often.

    States ``0..n-1`` wait for letter ``i``; state ``n`` marks a completed round
    and otherwise behaves like state 0.
    """
    alphabet = tuple("abcdefghijklmnopqrstuvwxyz"[:n])
    delta = []
    for i in range(n):
        done = n if i == n - 1 else i + 1
        delta.append([done if s == i else i for s in range(n)])
    delta.append([1 % n if n > 1 and s == 0 else (n if n == 1 else 0) for s in range(n)])
    kappa = [1] * n + [0]
    return Dpa(alphabet, delta, kappa, 0)


def load(name: str) -> Dpa:
    if name.startswith("every_"):
        return every_letter(int(name.split("_", 1)[1]))
    return parse_dpa(text(name))
