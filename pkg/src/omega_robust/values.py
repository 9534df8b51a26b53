"""Decompositions of lasso words, robustness values and the preference order."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property

from .automaton import Dpa, LassoWord, canonicalize
from .colors import AvgScore, format_fraction, score
from .errors import AnalysisError
from .forgetful import (
    ForgetfulDpa,
    accepts_forgetful,
    forgetful_trace,
    positional_colors,
    robustness_dpa,
    steady_period_colors,
)
from .natural import infix_ranker, minimize_ranks, word_rank


class Mode(Enum):
    AS_GIVEN = "as-given"
    SHORTEST = "shortest"
    LOOP_ENTRY = "loop-entry"


@dataclass(frozen=True)
class Decomposition:
    spoke: tuple
    period: tuple
    mode: Mode

    @property
    def word(self) -> LassoWord:
        return LassoWord(self.spoke, self.period)


@dataclass(frozen=True)
class RobustnessValue:
    acceptance: int  # +1 or -1; 0 only for the zero element
    period_value: AvgScore
    spoke_value: tuple  # (wb part, gr part)

    def key(self) -> tuple:
        return (
            self.acceptance,
            self.period_value.wb_avg,
            self.period_value.gr_avg,
            self.spoke_value[0],
            self.spoke_value[1],
        )

    def __lt__(self, other):
        return self.key() < other.key()

    def __le__(self, other):
        return self.key() <= other.key()

    def __gt__(self, other):
        return self.key() > other.key()

    def __ge__(self, other):
        return self.key() >= other.key()

    def __neg__(self) -> "RobustnessValue":
        return RobustnessValue(
            -self.acceptance,
            AvgScore(-self.period_value.wb_avg, -self.period_value.gr_avg),
            (-self.spoke_value[0], -self.spoke_value[1]),
        )

    def __str__(self) -> str:
        wb, gr = self.spoke_value
        return (
            f"accept={self.acceptance} period={self.period_value} "
            f"spoke=({format_fraction(wb)},{format_fraction(gr)})"
        )


ZERO = RobustnessValue(0, AvgScore(Fraction(0), Fraction(0)), (Fraction(0), Fraction(0)))


def satisfies_bar(value: RobustnessValue) -> bool:
    return value >= ZERO


class Preference(Enum):
    GREATER = ">"
    LESS = "<"
    EQUAL = "="

    def inverse(self) -> "Preference":
        return {
            Preference.GREATER: Preference.LESS,
            Preference.LESS: Preference.GREATER,
            Preference.EQUAL: Preference.EQUAL,
        }[self]


def order(v1: RobustnessValue, v2: RobustnessValue) -> Preference:
    if v1.key() > v2.key():
        return Preference.GREATER
    if v1.key() < v2.key():
        return Preference.LESS
    return Preference.EQUAL


class Robustness:
    """A language together with its rank-minimized DPA and robustness DPA."""

    def __init__(self, aut: Dpa, robust: ForgetfulDpa | None = None):
        self.source = minimize_ranks(aut)
        self._robust = robust
        self._values = {}

    @cached_property
    def robust(self) -> ForgetfulDpa:
        return self._robust or robustness_dpa(self.source)

    @property
    def alphabet(self) -> tuple:
        return self.source.alphabet

    def accepts(self, w: LassoWord) -> bool:
        return accepts_forgetful(self.robust, w)

    def decompose(self, w: LassoWord, mode: Mode = Mode.SHORTEST) -> Decomposition:
        if mode is Mode.AS_GIVEN:
            return Decomposition(w.spoke, w.period, mode)
        if mode is Mode.LOOP_ENTRY:
            trace = forgetful_trace(self.robust, w)
            t = trace.loop_entry
            cycle = len(trace.loop_states)
            letters = tuple(w.letter(i) for i in range(t + cycle))
            return Decomposition(letters[:t], letters[t:], mode)
        return self._shortest(w)

    def _shortest(self, w: LassoWord) -> Decomposition:
        """Least ``|uv|`` (then ``|u|``, then least ``v``) with the infix rank
        of ``(u, v)`` equal to the word's rank."""
        ranker = infix_ranker(self.source)
        target = word_rank(self.source, w)
        c = canonicalize(w)
        s0, p = len(c.spoke), len(c.period)
        n = self.source.size
        limit = s0 + p * (n + 1) + n * p
        for total in range(s0 + p, limit + 1):
            found = []
            for s in range(s0, total - p + 1):
                length = total - s
                if length % p:
                    continue
                letters = tuple(c.letter(i) for i in range(total))
                u, v = letters[:s], letters[s:]
                if ranker.infix_rank(u, v) == target:
                    found.append((s, v, u))
            if found:
                s, v, u = min(found)
                return Decomposition(u, v, Mode.SHORTEST)
        raise AnalysisError(f"no decomposition of {w} within length {limit} meets the rank")

    def value(self, w: LassoWord, mode: Mode = Mode.SHORTEST) -> RobustnessValue:
        key = (w, mode)
        hit = self._values.get(key)
        if hit is None:
            hit = self._values[key] = self._value(w, mode)
        return hit

    def _value(self, w: LassoWord, mode: Mode) -> RobustnessValue:
        d = self.decompose(w, mode)
        word = d.word
        acceptance = 1 if self.accepts(word) else -1
        _, _, tau_v = score(steady_period_colors(self.robust, word))
        k = len(d.spoke)
        if k == 0:
            spoke = (Fraction(0), Fraction(0))
        else:
            _, _, tau_u = score(positional_colors(self.robust, word, 0, k))
            spoke = (k * (tau_u.wb_avg - tau_v.wb_avg), k * (tau_u.gr_avg - tau_v.gr_avg))
        return RobustnessValue(acceptance, tau_v, spoke)

    def compare(self, w1: LassoWord, w2: LassoWord, mode: Mode = Mode.SHORTEST) -> Preference:
        return order(self.value(w1, mode), self.value(w2, mode))


def robustness_value(aut: Dpa, w: LassoWord, mode: Mode = Mode.SHORTEST) -> RobustnessValue:
    return Robustness(aut).value(w, mode)


def compare(aut: Dpa, w1: LassoWord, w2: LassoWord, mode: Mode = Mode.SHORTEST) -> Preference:
    return Robustness(aut).compare(w1, w2, mode)
