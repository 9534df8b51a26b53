"""Brute-force re-derivations and the bounded-exhaustive property suite.

The literal letter-rank oracle evaluates influential positions, predominant
and dominant suffixes straight from their definitions with raw infix-rank
calls and bounded enumeration of continuations.  It shares nothing with the
streaming analyzer or the automaton constructions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
import random
from itertools import chain, combinations
from typing import Callable, Iterable, Sequence

from . import fixtures
from .automaton import (
    Dpa,
    LassoWord,
    accepts,
    bounded_lassos,
    canonicalize,
    complement,
    format_word,
    is_empty_from,
    is_universal_from,
    lang_equiv,
    shortlex_words,
)
from .colors import letter_colors
from .errors import SuiteFailure
from .forgetful import (
    ForgetfulDpa,
    accepts_forgetful,
    colored_run,
    forgetful_transform,
)
from .natural import infix_rank, infix_ranker, minimize_ranks, word_rank
from .rank import INFINITE, NEG_ONE, NEG_TWO, Rank
from .suffixes import LetterAnalyzer, letter_rank_stream, plain_oracle, reset_points
from .values import Mode, Robustness, satisfies_bar
from .vigor import build_vigor, minimize_vigor

# ---------------------------------------------------------------- oracles


def oracle_infix_rank(
    aut: Dpa,
    u: Sequence[str],
    v: Sequence[str],
    max_z: int | None = None,
    extra: Iterable[tuple] = (),
) -> Rank:
    """Sentinel ranks if ``uv`` already decides the word; otherwise the largest
    rank of ``u(vz)^ω`` over ``|z| <= max_z`` with ``uvz`` back in ``u``'s class,
    and infinite if no such ``z`` exists.  ``extra`` adds longer candidates."""
    u, v = tuple(u), tuple(v)
    max_z = aut.size if max_z is None else max_z
    q_u = aut.run(u)
    q_uv = aut.run(v, q_u)
    if is_universal_from(aut, q_uv):
        return NEG_TWO
    if is_empty_from(aut, q_uv):
        return NEG_ONE
    same_class = {}
    best = None
    for z in chain(shortlex_words(aut.alphabet, max_z), extra):
        y = v + z
        if not y:
            continue
        q = aut.run(z, q_uv)
        if q not in same_class:
            same_class[q] = lang_equiv(aut, q, aut, q_u)
        if not same_class[q]:
            continue
        r = _periodic_rank(aut, q_u, y)
        if best is None or r > best:
            best = r
    return INFINITE if best is None else best


def _periodic_rank(aut: Dpa, start: int, y: tuple) -> int:
    """Least rank seen infinitely often reading ``y^ω`` from ``start``."""
    heads = []
    q = start
    while q not in heads:
        heads.append(q)
        q = aut.run(y, q)
    least = None
    for h in heads[heads.index(q) :]:
        p = h
        for symbol in y:
            p = aut.step(p, symbol)
            least = aut.kappa[p] if least is None else min(least, aut.kappa[p])
    return Rank(least)


def _same_future(aut, w, j, l, k, depth) -> bool:
    for y in shortlex_words(aut.alphabet, depth):
        a = infix_rank(aut, w[: j - 1], w[j - 1 : k] + y)
        b = infix_rank(aut, w[: l - 1], w[l - 1 : k] + y)
        if a != b:
            return False
    return True


def oracle_letter_ranks(aut: Dpa, w: LassoWord, n: int, depth: int | None = None) -> list:
    """Ranks of letters ``1..n`` from the definitions, index by index."""
    depth = aut.size if depth is None else depth
    word = w.prefix(n)

    def rho(j, k):
        j = max(j, 1)
        return infix_rank(aut, word[: j - 1], word[j - 1 : k])

    ranks = []
    r = 0
    for k in range(1, n + 1):
        lo = max(r, 1)
        top = rho(lo, k)
        influential = any(rho(j, k) == top and rho(j, k) < rho(j, k - 1) for j in range(lo, k + 1))
        if influential:
            r = max(j for j in range(lo, k + 1) if rho(j, k) == top)
        else:
            last = rho(k, k)
            l = min(j for j in range(lo, k + 1) if rho(j, k) == last)
            r = l
            for j in range(k, l, -1):
                if rho(j, k) == last and _same_future(aut, word, j, l, k, depth):
                    r = j
                    break
        ranks.append(rho(r, k))
    return ranks


# ---------------------------------------------------------------- reports


@dataclass
class PropertyReport:
    prop: str
    fixture: str
    words_checked: int = 0
    counterexample: str | None = None

    @property
    def status(self) -> str:
        return "fail" if self.counterexample is not None else "pass"

    def to_json(self) -> str:
        data = {
            "id": self.prop,
            "fixture": self.fixture,
            "words_checked": self.words_checked,
            "status": self.status,
        }
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        return json.dumps(data, ensure_ascii=False)

    def to_text(self) -> str:
        line = f"{self.status.upper():4} {self.prop:32} {self.fixture:10} {self.words_checked:7} checked"
        if self.counterexample is not None:
            line += f"  counterexample: {self.counterexample}"
        return line


@dataclass
class SuiteReport:
    results: list = field(default_factory=list)

    @property
    def failures(self) -> list:
        return [r for r in self.results if r.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_text(self) -> str:
        lines = [r.to_text() for r in self.results]
        lines.append(f"{len(self.results) - len(self.failures)}/{len(self.results)} properties hold")
        return "\n".join(lines) + "\n"

    def to_json_lines(self) -> str:
        return "".join(r.to_json() + "\n" for r in self.results)

    def check(self) -> None:
        if self.failures:
            first = self.failures[0]
            raise SuiteFailure(first.prop, first.fixture, first.counterexample)


# ---------------------------------------------------------------- universe


@dataclass(frozen=True)
class TestUniverse:
    __test__ = False  # keep pytest from collecting this class

    automata: tuple = fixtures.UNIVERSE
    max_spoke: int = 3
    max_period: int = 4

    def load(self) -> Iterable:
        for entry in self.automata:
            if isinstance(entry, tuple):
                yield entry
            else:
                yield entry, fixtures.load(entry)


class Fixture:
    """Everything the properties need about one automaton, built lazily."""

    def __init__(self, name: str, aut: Dpa, max_spoke: int, max_period: int, vigor: Dpa | None = None):
        self.name = name
        self.aut = aut
        self.max_spoke = max_spoke
        self.max_period = max_period
        self._vigor = vigor

    @cached_property
    def source(self) -> Dpa:
        return minimize_ranks(self.aut)

    @cached_property
    def vigor(self) -> Dpa:
        return self._vigor if self._vigor is not None else build_vigor(self.source)

    @cached_property
    def robust(self) -> ForgetfulDpa:
        return forgetful_transform(minimize_vigor(self.vigor))

    @cached_property
    def robustness(self) -> Robustness:
        return Robustness(self.source, self.robust)

    @cached_property
    def dual(self) -> Robustness:
        return Robustness(complement(self.source))

    @cached_property
    def lassos(self) -> list:
        found = {canonicalize(w) for w in bounded_lassos(self.aut.alphabet, self.max_spoke, self.max_period)}
        return sorted(found, key=lambda w: (len(w.spoke) + len(w.period), w.spoke, w.period))

    def horizon(self, w: LassoWord) -> int:
        return len(w.spoke) + 2 * len(w.period)


class Checker:
    def __init__(self, prop: str, fixture: str):
        self.report = PropertyReport(prop, fixture)

    def check(self, ok: bool, describe: Callable[[], str]) -> bool:
        self.report.words_checked += 1
        if not ok and self.report.counterexample is None:
            self.report.counterexample = describe()
        return ok


def _w(word) -> str:
    return format_word(word) or "ε"


# ---------------------------------------------------------------- properties


def prop_min_inf(fx: Fixture, c: Checker) -> None:
    for w in fx.lassos:
        a = letter_rank_stream(fx.source, w).min_inf
        b = word_rank(fx.source, w)
        if not c.check(a == b, lambda: f"{w}: letters {a}, word {b}"):
            return


def prop_monotonicity(fx: Fixture, c: Checker) -> None:
    ranker = infix_ranker(fx.source)
    rank = ranker.infix_rank
    short = list(shortlex_words(fx.aut.alphabet, 2))
    nonempty = short[1:]
    for u in short:
        for v in nonempty:
            base = rank(u, v)
            for y in nonempty:
                got = rank(u, v + y)
                if not c.check(got <= base, lambda: f"u={_w(u)} v={_w(v)} y={_w(y)}: {got} > {base}"):
                    return
    class_of = ranker.classes.class_of
    for x in short:
        for y in short:
            target = class_of[fx.source.run(x + y)]
            for u in short:
                if class_of[fx.source.run(u)] != target:
                    continue
                for v in nonempty:
                    got, base = rank(x, y + v), rank(u, v)
                    if got.is_infinite:
                        # nothing loops back to x's class; the inequality only
                        # speaks about periods that do
                        continue
                    if not c.check(
                        got <= base,
                        lambda: f"x={_w(x)} y={_w(y)} u={_w(u)} v={_w(v)}: {got} > {base}",
                    ):
                        return


def prop_idempotence(fx: Fixture, c: Checker) -> None:
    memo = {(): ()}

    def dom(x):
        hit = memo.get(x)
        if hit is None:
            r = reset_points(plain_oracle(fx.source, x))[-1]
            hit = memo[x] = x[r - 1 :]
        return hit

    for x in shortlex_words(fx.aut.alphabet, fx.max_spoke + 2):
        for s in fx.aut.alphabet:
            a, b = dom(dom(x) + (s,)), dom(x + (s,))
            if not c.check(a == b, lambda: f"x={_w(x)} σ={s}: {_w(a)} vs {_w(b)}"):
                return


def prop_rank_correspondence(fx: Fixture, c: Checker) -> None:
    ranker = infix_ranker(fx.source)
    vigor = fx.vigor
    for w in fx.lassos:
        analyzer = LetterAnalyzer(ranker)
        q = vigor.initial
        ok = vigor.kappa[q] == analyzer.current_rank()
        for t in range(fx.horizon(w)):
            if not ok:
                break
            q = vigor.step(q, w.letter(t))
            ok = vigor.kappa[q] == analyzer.step(w.letter(t))
        if not c.check(ok, lambda: f"{w} at letter {t}: vigor {vigor.kappa[q]}"):
            return


def prop_color_correspondence(fx: Fixture, c: Checker) -> None:
    robust = fx.robust
    ranker = infix_ranker(fx.source)
    for w in fx.lassos:
        n = fx.horizon(w)
        run = colored_run(robust, w, n)
        semantic = letter_colors(fx.source, w, n)
        if not c.check(
            list(run.colors) == semantic,
            lambda: f"{w}: {[str(x) for x in run.colors]} vs {[str(x) for x in semantic]}",
        ):
            return
        kept = LetterAnalyzer(ranker)
        for t, symbol in enumerate(w.prefix(n)):
            trial = LetterAnalyzer.from_signature(ranker, kept.signature())
            rank = trial.step(symbol)
            if not c.check(run.ranks[t] == rank, lambda: f"{w} letter {t}: state rank {run.ranks[t]} vs {rank}"):
                return
            if rank >= 0:
                kept = trial
        a, b, d = accepts_forgetful(robust, w), accepts(fx.vigor, w), accepts(fx.aut, w)
        if not c.check(a == b == d, lambda: f"{w}: forgetful {a}, vigor {b}, input {d}"):
            return


def prop_satisfaction_bar(fx: Fixture, c: Checker) -> None:
    rb = fx.robustness
    for w in fx.lassos:
        member = accepts(fx.aut, w)
        for mode in Mode:
            value = rb.value(w, mode)
            if not c.check(
                satisfies_bar(value) == member and (value.acceptance == 1) == member,
                lambda: f"{w} [{mode.value}]: {value}, member {member}",
            ):
                return


def prop_complement(fx: Fixture, c: Checker) -> None:
    rb, dual = fx.robustness, fx.dual
    for w in fx.lassos:
        for mode in Mode:
            a, b = rb.value(w, mode), dual.value(w, mode)
            if mode is Mode.AS_GIVEN:
                ok = a.period_value.wb_avg == -b.period_value.wb_avg and (
                    a.period_value.gr_avg == -b.period_value.gr_avg
                )
            else:
                ok = a.key() == (-b).key()
            if not c.check(ok, lambda: f"{w} [{mode.value}]: {a} vs complement {b}"):
                return


def prop_duality(fx: Fixture, c: Checker) -> None:
    rb, dual = fx.robustness, fx.dual
    small = [w for w in fx.lassos if len(w.spoke) + len(w.period) <= 3]
    for mode in (Mode.SHORTEST, Mode.LOOP_ENTRY):
        for w1, w2 in combinations(small, 2):
            a, b = rb.compare(w1, w2, mode), dual.compare(w1, w2, mode)
            if not c.check(a == b.inverse(), lambda: f"{w1} vs {w2} [{mode.value}]: {a.value} / {b.value}"):
                return


def prop_representation(fx: Fixture, c: Checker) -> None:
    rb = fx.robustness
    for w in fx.lassos:
        variants = [w, LassoWord(w.spoke + w.period, w.period), LassoWord(w.spoke, w.period * 2)]
        for mode in (Mode.SHORTEST, Mode.LOOP_ENTRY):
            values = [rb.value(x, mode).key() for x in variants]
            if not c.check(len(set(values)) == 1, lambda: f"{w} [{mode.value}]: {values}"):
                return
        periods = {rb.value(x, mode).period_value for x in variants for mode in Mode}
        if not c.check(len(periods) == 1, lambda: f"{w}: period values {sorted(map(str, periods))}"):
            return


def prop_oracle_letters(fx: Fixture, c: Checker) -> None:
    for w in fx.lassos:
        if len(w.spoke) + len(w.period) > 3:
            continue
        n = fx.horizon(w)
        a = oracle_letter_ranks(fx.source, w, n)
        analyzer = LetterAnalyzer(infix_ranker(fx.source))
        b = analyzer.feed(w.prefix(n))
        if not c.check(a == b, lambda: f"{w}: oracle {[str(x) for x in a]} vs {[str(x) for x in b]}"):
            return


def prop_infix_oracle(fx: Fixture, c: Checker) -> None:
    size = fx.source.size
    letters = [(s,) for s in fx.aut.alphabet]
    for u in [()] + letters:
        for v in letters + [x + y for x in letters for y in letters]:
            a = oracle_infix_rank(fx.source, u, v, size)
            b = infix_rank(fx.source, u, v)
            if not c.check(a == b, lambda: f"u={_w(u)} v={_w(v)}: enumerated {a}, computed {b}"):
                return
    # longer witnesses, sampled, probe the assumption that |z| <= size suffices
    rng = random.Random(0)
    sample = [
        tuple(rng.choice(fx.aut.alphabet) for _ in range(rng.randint(size + 1, 2 * size)))
        for _ in range(200)
    ]
    for v in letters:
        a = oracle_infix_rank(fx.source, (), v, size, sample)
        b = infix_rank(fx.source, (), v)
        if not c.check(a == b, lambda: f"v={_w(v)} with sampled |z| up to {2 * size}: {a} vs {b}"):
            return


PROPERTIES = {
    "min-inf-letter-rank": prop_min_inf,
    "infix-monotonicity": prop_monotonicity,
    "dom-suffix-idempotence": prop_idempotence,
    "vigor-rank-correspondence": prop_rank_correspondence,
    "robust-color-correspondence": prop_color_correspondence,
    "satisfaction-bar": prop_satisfaction_bar,
    "complement-negation": prop_complement,
    "complement-duality": prop_duality,
    "representation-invariance": prop_representation,
    "oracle-letter-ranks": prop_oracle_letters,
    "infix-rank-oracle": prop_infix_oracle,
}


# ---------------------------------------------------------------- order regressions


def _expect_greater(c: Checker, rb: Robustness, better: LassoWord, worse: LassoWord) -> bool:
    a, b = rb.value(better), rb.value(worse)
    return c.check(a > b, lambda: f"{better} should beat {worse}: {a} vs {b}")


def shorter_spoke_order(c: Checker, bound: int = 4) -> None:
    rb = Robustness(fixtures.load("always_a"))
    for i in range(bound):
        for j in range(i + 1, bound + 1):
            pairs = [
                (LassoWord("b" * i, "a"), LassoWord("b" * j, "a")),
                (LassoWord("", "b" * i + "a"), LassoWord("", "b" * j + "a")),
            ]
            if i >= 1:
                pairs.append((LassoWord("", "b" + "a" * j), LassoWord("", "b" + "a" * i)))
            for better, worse in pairs:
                if not _expect_greater(c, rb, better, worse):
                    return


def response_time_order(c: Checker, bound: int = 4) -> None:
    rb = Robustness(fixtures.load("response"))
    for i in range(bound):
        for j in range(i + 1, bound + 1):
            better = LassoWord((), ("a",) + ("c",) * i + ("b",))
            worse = LassoWord((), ("a",) + ("c",) * j + ("b",))
            if not _expect_greater(c, rb, better, worse):
                return


REGRESSIONS = {
    ("shorter-spoke-order", "always_a"): shorter_spoke_order,
    ("response-time-order", "response"): response_time_order,
}


# ---------------------------------------------------------------- driver


def check_fixture(fx: Fixture, props: Iterable[str] | None = None) -> list:
    out = []
    for prop in props or PROPERTIES:
        checker = Checker(prop, fx.name)
        PROPERTIES[prop](fx, checker)
        out.append(checker.report)
    return out


def run_suite(
    universe: TestUniverse | None = None,
    *,
    props: Iterable[str] | None = None,
    regressions: bool = True,
    vigor_override: dict | None = None,
) -> SuiteReport:
    """Run every property on every automaton of the universe.

    ``vigor_override`` maps fixture names to replacement vigor automata, which
    is how mutation tests inject a corrupted construction.
    """
    universe = universe or TestUniverse()
    overrides = vigor_override or {}
    report = SuiteReport()
    for name, aut in universe.load():
        fx = Fixture(name, aut, universe.max_spoke, universe.max_period, overrides.get(name))
        report.results.extend(check_fixture(fx, props))
    if regressions:
        for (prop, name), fn in REGRESSIONS.items():
            checker = Checker(prop, name)
            fn(checker)
            report.results.append(checker.report)
    return report
