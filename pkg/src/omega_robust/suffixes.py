"""Influential positions, dominant suffixes, reset points and letter ranks.

Positions are 1-based as in the tables these functions reproduce: ``rho(j, k)``
is the rank of the infix ``w[j..k]`` (letters ``j`` through ``k``) after the
spoke ``w[..j)``.  ``rho(j, j-1)`` is the empty infix.  Index 0 behaves as 1,
so ``rho(0, 0)`` is the rank of the empty infix after the empty spoke.

Any object with ``rho(j, k)`` and ``future_equivalent(j, l, k)`` can serve as
an oracle.  :class:`WordOracle` answers for arbitrary indices of a fixed word;
:class:`LetterAnalyzer` streams a word and keeps only the live window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .automaton import Dpa, LassoWord, canonicalize, format_word
from .natural import EMPTY, InfixRanks, infix_ranker
from .rank import Rank


class WordOracle:
    """Infix ranks over a fixed finite word.

    ``base`` is the state the word is read from: the initial state for the
    plain setting, or the state of a class representative ``u`` when the spoke
    is ``u`` followed by the consumed prefix.
    """

    def __init__(self, ranker: InfixRanks, word: Sequence[str], base: int | None = None):
        self.ranker = ranker
        self.word = tuple(word)
        aut = ranker.aut
        self.base = aut.initial if base is None else base
        self._spokes = [self.base]
        for symbol in self.word:
            self._spokes.append(aut.step(self._spokes[-1], symbol))
        self._profiles = {}

    def spoke_state(self, j: int) -> int:
        return self._spokes[max(j, 1) - 1]

    def profile(self, j: int, k: int) -> int:
        j = max(j, 1)
        if k < j:
            return EMPTY
        key = (j, k)
        pid = self._profiles.get(key)
        if pid is None:
            prev = self.profile(j, k - 1)
            pid = self.ranker.extend(prev, self.ranker.aut.symbol_index(self.word[k - 1]))
            self._profiles[key] = pid
        return pid

    def rho(self, j: int, k: int) -> Rank:
        return self.ranker.rank(self.spoke_state(j), self.profile(j, k))

    def future_equivalent(self, j: int, l: int, k: int) -> bool:
        return self.ranker.future_equivalent(
            self.spoke_state(j), self.profile(j, k), self.spoke_state(l), self.profile(l, k)
        )


def plain_oracle(aut: Dpa, word: Sequence[str]) -> WordOracle:
    return WordOracle(infix_ranker(aut), word)


# ---------------------------------------------------------------- definitions


def is_influential(oracle, i: int, k: int) -> bool:
    if k == 0:
        return False
    lo = max(i, 1)
    target = oracle.rho(lo, k)
    for j in range(lo, k + 1):
        now = oracle.rho(j, k)
        if now == target and now < oracle.rho(j, k - 1):
            return True
    return False


def predominant_index(oracle, i: int, k: int, *, influential: bool | None = None) -> int:
    if k == 0:
        return 0
    lo = max(i, 1)
    if influential is None:
        influential = is_influential(oracle, i, k)
    if influential:
        target = oracle.rho(lo, k)
        return max(j for j in range(lo, k + 1) if oracle.rho(j, k) == target)
    target = oracle.rho(k, k)
    return min(j for j in range(lo, k + 1) if oracle.rho(j, k) == target)


def dominant_index(oracle, i: int, k: int, *, influential: bool | None = None) -> int:
    if k == 0:
        return 0
    if influential is None:
        influential = is_influential(oracle, i, k)
    l = predominant_index(oracle, i, k, influential=influential)
    if influential:
        return l
    target = oracle.rho(l, k)
    for j in range(k, l, -1):
        if oracle.rho(j, k) == target and oracle.future_equivalent(j, l, k):
            return j
    return l


def reset_points(oracle, n: int | None = None) -> list:
    """Reset points ``r(1..n)``, each relative to the previous one."""
    n = len(oracle.word) if n is None else n
    out = []
    r = 0
    for k in range(1, n + 1):
        r = dominant_index(oracle, r, k)
        out.append(r)
    return out


def letter_rank(oracle, k: int) -> Rank:
    if k == 0:
        return oracle.rho(0, 0)
    return oracle.rho(reset_points(oracle, k)[-1], k)


# ---------------------------------------------------------------- streaming


@dataclass(frozen=True)
class LetterAnalysis:
    index: int
    letter: str | None
    influential: bool
    predom_index: int
    reset_point: int
    predom_suffix: tuple
    dom_suffix: tuple
    letter_rank: Rank

    def describe(self) -> str:
        return (
            f"{self.index}\t{self.letter or '-'}\t{'T' if self.influential else 'F'}\t"
            f"{self.reset_point}\t{format_word(self.dom_suffix) or 'ε'}\t{self.letter_rank}"
        )


class _Window:
    """Oracle view of the live candidates at the current position."""

    def __init__(self, ranker, entries, k):
        self.ranker = ranker
        self.entries = entries  # j -> (spoke state, profile before, profile after)
        self.k = k

    def rho(self, j: int, k: int) -> Rank:
        spoke, before, after = self.entries[max(j, 1)]
        return self.ranker.rank(spoke, after if k == self.k else before)

    def future_equivalent(self, j: int, l: int, k: int) -> bool:
        sj, _, pj = self.entries[j]
        sl, _, pl = self.entries[l]
        return self.ranker.future_equivalent(sj, pj, sl, pl)


class LetterAnalyzer:
    """Streams letters and reports the rank of each one.

    With ``value_state`` set, the reported rank is the infix rank of the
    dominant suffix after a spoke ending in ``value_state`` instead of after
    the consumed prefix; this is the per-class reading used by the vigor
    construction.
    """

    def __init__(self, ranker: InfixRanks, base: int | None = None, value_state: int | None = None):
        self.ranker = ranker
        self.aut = ranker.aut
        self.state = self.aut.initial if base is None else base
        self.value_state = value_state
        self.k = 0
        self.reset = 0
        self.cands = []  # (j, spoke state, profile of w[j..k])

    @classmethod
    def from_signature(cls, ranker: InfixRanks, signature: tuple, value_state: int | None = None):
        state, cands = signature
        analyzer = cls(ranker, state, value_state)
        analyzer.cands = [(j, s, p) for j, (s, p) in enumerate(cands, 1)]
        analyzer.k = len(cands)
        analyzer.reset = 1 if cands else 0
        return analyzer

    def signature(self) -> tuple:
        """Everything the future of the analysis depends on."""
        return (self.state, tuple((s, p) for _, s, p in self.cands))

    def current_rank(self) -> Rank:
        if not self.cands:
            spoke = self.state if self.value_state is None else self.value_state
            return self.ranker.rank(spoke, EMPTY)
        _, spoke, pid = self.cands[0]
        if self.value_state is not None:
            spoke = self.value_state
        return self.ranker.rank(spoke, pid)

    def step(self, symbol: str) -> Rank:
        """Consume one letter and return its rank."""
        ranker = self.ranker
        s = self.aut.symbol_index(symbol)
        k = self.k + 1
        entries = {j: (spoke, pid, ranker.extend(pid, s)) for j, spoke, pid in self.cands}
        entries[k] = (self.state, EMPTY, ranker.extend(EMPTY, s))
        r = dominant_index(_Window(ranker, entries, k), self.reset, k)
        cands = []
        for j, (spoke, _, after) in sorted(entries.items()):
            # adjacent candidates with the same spoke state and profile stay
            # interchangeable forever, so one of them is enough
            if j >= r and (not cands or cands[-1][1:] != (spoke, after)):
                cands.append((len(cands) + 1, spoke, after))
        self.cands = cands
        self.state = self.aut.delta[self.state][s]
        # only the order of candidates matters, so they are renumbered from 1
        self.k = len(cands)
        self.reset = 1
        return self.current_rank()

    def feed(self, word: Sequence[str]) -> list:
        """Consume ``word`` and return the rank of each of its letters."""
        return [self.step(symbol) for symbol in word]


def initial_rank(aut: Dpa) -> Rank:
    """Rank before the first letter: the empty infix after the empty spoke."""
    return infix_ranker(aut).rank(aut.initial, EMPTY)


def analyze_word(aut: Dpa, word: Sequence[str]) -> list:
    """Letter analyses of positions ``1..|word|`` of a finite word.

    Reset points are computed incrementally.  The influential flag and the
    predominant suffix are reported relative to the start of the word, which
    by the stability of dominant indices yields the same reset points.
    """
    word = tuple(word)
    oracle = plain_oracle(aut, word)
    out = []
    r = 0
    for k in range(1, len(word) + 1):
        r = dominant_index(oracle, r, k)
        influential = is_influential(oracle, 0, k)
        predom = predominant_index(oracle, 0, k, influential=influential)
        out.append(
            LetterAnalysis(
                index=k,
                letter=word[k - 1],
                influential=influential,
                predom_index=predom,
                reset_point=r,
                predom_suffix=word[predom - 1 : k],
                dom_suffix=word[r - 1 : k],
                letter_rank=oracle.rho(r, k),
            )
        )
    return out


def word_letter_rank(aut: Dpa, word: Sequence[str]) -> Rank:
    """Rank of the last letter of ``word`` (the initial rank if it is empty)."""
    analyzer = LetterAnalyzer(infix_ranker(aut))
    analyzer.feed(word)
    return analyzer.current_rank()


def letter_table(aut: Dpa, w: LassoWord, n: int) -> list:
    """Analyses of the first ``n`` positions of a lasso word."""
    return analyze_word(aut, w.prefix(n))


@dataclass(frozen=True)
class RankStream:
    """Eventually periodic letter ranks of a lasso word (positions from 1)."""

    prefix: tuple
    loop: tuple

    def at(self, k: int) -> Rank:
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        return self.loop[(k - len(self.prefix) - 1) % len(self.loop)]

    @property
    def min_inf(self) -> Rank:
        return min(self.loop)


def letter_rank_stream(aut: Dpa, w: LassoWord, limit: int = 100_000) -> RankStream:
    """Detects the period of the rank sequence by repetition of the analyzer
    signature at the same phase of the word's period."""
    w = canonicalize(w)
    analyzer = LetterAnalyzer(infix_ranker(aut))
    ranks = analyzer.feed(w.spoke)
    base = len(w.spoke)
    p = len(w.period)
    seen = {}
    t = base
    while t < base + limit:
        key = (analyzer.signature(), (t - base) % p)
        if key in seen:
            start = seen[key]
            return RankStream(tuple(ranks[:start]), tuple(ranks[start:]))
        seen[key] = t
        ranks.append(analyzer.step(w.period[(t - base) % p]))
        t += 1
    raise RuntimeError("letter-rank stream did not become periodic")
