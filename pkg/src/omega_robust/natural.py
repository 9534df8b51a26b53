"""Natural ranks of words and infixes, rank minimization and right congruence.

Infix ranks are evaluated semantically.  A finite word ``y`` acts on the
automaton as a *profile*: for every state, the state reached by ``y`` and the
least rank seen on the way (start state included).  The rank of a period
starting with ``v`` after spoke ``u`` is the largest loop rank over all
extensions ``vz`` that bring ``u``'s congruence class back to itself; that
maximum ranges over the finite monoid of profiles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import networkx as nx

from .automaton import (
    Dpa,
    LassoWord,
    _graph,
    _nontrivial_sccs,
    bfs_words,
    lang_equiv,
    realized_cycle_ranks,
    run_lasso,
)
from .rank import INFINITE, NEG_ONE, NEG_TWO, Rank

# ---------------------------------------------------------------- minimization


def minimize_ranks(aut: Dpa) -> Dpa:
    """Pointwise least ranks that keep the language, on the same structure.

    Nested SCC decomposition: inside a strongly connected set the least-ranked
    states get the smallest value of the right parity above the enclosing
    level, then the rest is decomposed again one level up.
    """
    new = [k % 2 for k in aut.kappa]  # unreachable states keep only their parity
    for q in aut.reachable:
        new[q] = 0
    g = _graph(aut.delta, aut.reachable)
    for comp in _nontrivial_sccs(g):
        _assign(aut, comp, 0, new)
    return aut.with_ranks(new)


def _assign(aut: Dpa, comp: set, base: int, new: list) -> None:
    m = min(aut.kappa[q] for q in comp)
    level = base if m % 2 == base % 2 else base + 1
    for q in comp:
        new[q] = level
    rest = [q for q in comp if aut.kappa[q] != m]
    for sub in _nontrivial_sccs(_graph(aut.delta, rest)):
        _assign(aut, sub, level, new)


# ---------------------------------------------------------------- congruence


@dataclass(frozen=True)
class CongruenceClasses:
    class_of: dict  # reachable state -> class id
    representatives: tuple  # class id -> shortlex-least word

    @property
    def count(self) -> int:
        return len(self.representatives)

    def members(self, c: int) -> frozenset:
        return frozenset(q for q, k in self.class_of.items() if k == c)


def congruence_classes(aut: Dpa) -> CongruenceClasses:
    words = bfs_words(aut)  # insertion order is shortlex order of least words
    reps_state = []
    class_of = {}
    for q in words:
        for c, r in enumerate(reps_state):
            if lang_equiv(aut, q, aut, r):
                class_of[q] = c
                break
        else:
            class_of[q] = len(reps_state)
            reps_state.append(q)
    return CongruenceClasses(class_of, tuple(words[r] for r in reps_state))


# ---------------------------------------------------------------- infix ranks

EMPTY = 0  # profile id of the empty word; never merged with non-empty words


class InfixRanks:
    """Memoized infix-rank evaluator over a rank-minimized automaton."""

    def __init__(self, aut: Dpa, classes: CongruenceClasses | None = None):
        self.aut = aut
        self.classes = classes or congruence_classes(aut)
        n = aut.size
        kappa = [int(k) for k in aut.kappa]
        self._kappa = kappa
        reach = aut.reachable
        self._class_of = [self.classes.class_of.get(q, -1) for q in range(n)]
        identity = tuple((q, kappa[q]) for q in range(n))
        self._profiles = [identity]
        self._ids = {}
        self._succ = [None]
        self._reach = reach
        self._best = {}
        self._future = {}
        self._closed = False

    # profiles -----------------------------------------------------------

    def _intern(self, prof: tuple) -> int:
        pid = self._ids.get(prof)
        if pid is None:
            pid = len(self._profiles)
            self._ids[prof] = pid
            self._profiles.append(prof)
            self._succ.append(None)
        return pid

    def extend(self, pid: int, symbol_index: int) -> int:
        succ = self._succ[pid]
        if succ is None:
            succ = self._succ[pid] = [None] * len(self.aut.alphabet)
        nxt = succ[symbol_index]
        if nxt is None:
            delta, kappa = self.aut.delta, self._kappa
            prof = []
            for t, m in self._profiles[pid]:
                t2 = delta[t][symbol_index]
                k = kappa[t2]
                prof.append((t2, m if m < k else k))
            nxt = succ[symbol_index] = self._intern(tuple(prof))
        return nxt

    def profile(self, word: Sequence[str], start: int = EMPTY) -> int:
        pid = start
        for symbol in word:
            pid = self.extend(pid, self.aut.symbol_index(symbol))
        return pid

    def target(self, state: int, pid: int) -> int:
        return self._profiles[pid][state][0]

    def _close(self) -> None:
        """Generate every profile of a non-empty word."""
        if self._closed:
            return
        sigma = len(self.aut.alphabet)
        todo = [self.extend(EMPTY, s) for s in range(sigma)]
        seen = set(todo)
        while todo:
            pid = todo.pop()
            for s in range(sigma):
                nxt = self.extend(pid, s)
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        self._nonempty = sorted(seen)
        self._closed = True

    # ranks --------------------------------------------------------------

    def loop_rank(self, state: int, pid: int) -> int | None:
        """Rank of ``u(y)^ω`` when ``y`` (profile ``pid``) returns ``u``'s class, else None."""
        prof = self._profiles[pid]
        cls = self._class_of[state]
        if self._class_of[prof[state][0]] != cls:
            return None
        seen = {}
        order = []
        q = state
        while q not in seen:
            seen[q] = len(order)
            order.append(q)
            q = prof[q][0]
        return min(prof[p][1] for p in order[seen[q]:])

    def _best_from(self, state: int) -> dict:
        """Per non-empty profile: best loop rank over all profiles reachable from it."""
        table = self._best.get(state)
        if table is not None:
            return table
        self._close()
        g = nx.DiGraph()
        g.add_nodes_from(self._nonempty)
        for pid in self._nonempty:
            g.add_edges_from((pid, nxt) for nxt in self._succ[pid])
        cond = nx.condensation(g)
        value = {}
        for c in reversed(list(nx.topological_sort(cond))):
            best = -1
            for pid in cond.nodes[c]["members"]:
                r = self.loop_rank(state, pid)
                if r is not None and r > best:
                    best = r
            for d in cond.successors(c):
                if value[d] > best:
                    best = value[d]
            value[c] = best
        mapping = cond.graph["mapping"]
        table = {pid: value[mapping[pid]] for pid in self._nonempty}
        self._best[state] = table
        return table

    def rank(self, state: int, pid: int) -> Rank:
        """Rank of a period starting with the word of profile ``pid`` after a
        spoke leading to ``state``."""
        aut = self.aut
        q = self._profiles[pid][state][0]
        if q in aut.universal_states:
            return NEG_TWO
        if q in aut.empty_states:
            return NEG_ONE
        table = self._best_from(state)
        if pid == EMPTY:
            best = max(
                (table[self.extend(EMPTY, s)] for s in range(len(aut.alphabet))), default=-1
            )
        else:
            best = table[pid]
        return INFINITE if best < 0 else Rank(best)

    def infix_rank(self, u: Sequence[str], v: Sequence[str]) -> Rank:
        return self.rank(self.aut.run(u), self.profile(v))

    def future_equivalent(self, s1: int, p1: int, s2: int, p2: int) -> bool:
        """Whether ``rank(s1, p1·y) == rank(s2, p2·y)`` for every word ``y``."""
        key = (s1, p1, s2, p2)
        hit = self._future.get(key)
        if hit is not None:
            return hit
        sigma = len(self.aut.alphabet)
        seen = {(p1, p2)}
        todo = [(p1, p2)]
        result = True
        while todo:
            a, b = todo.pop()
            if self.rank(s1, a) != self.rank(s2, b):
                result = False
                break
            for s in range(sigma):
                nxt = (self.extend(a, s), self.extend(b, s))
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        self._future[key] = result
        return result


@lru_cache(maxsize=64)
def infix_ranker(aut: Dpa) -> InfixRanks:
    """Shared evaluator per automaton (the automaton must be rank-minimized)."""
    return InfixRanks(aut)


def infix_rank(aut: Dpa, u: Sequence[str], v: Sequence[str], classes=None) -> Rank:
    ranker = infix_ranker(aut) if classes is None else InfixRanks(aut, classes)
    return ranker.infix_rank(tuple(u), tuple(v))


def word_rank(aut: Dpa, w: LassoWord) -> Rank:
    trace = run_lasso(aut, w)
    visited = set(trace.prefix_states) | set(trace.loop_states)
    if visited & aut.universal_states:
        return NEG_TWO
    if visited & aut.empty_states:
        return NEG_ONE
    return Rank(min(aut.kappa[q] for q in trace.loop_states))


# ---------------------------------------------------------------- Wagner


@dataclass(frozen=True)
class WagnerClass:
    chain_length: int
    polarity: str  # "plus" | "minus" | "plus_minus"

    def __str__(self) -> str:
        sign = {"plus": "+", "minus": "-", "plus_minus": "±"}[self.polarity]
        return f"DM{sign}{self.chain_length}"


def wagner_class(aut: Dpa) -> WagnerClass:
    """Longest alternating chain of nested SCCs and the parity of its innermost one."""
    aut = minimize_ranks(aut)
    g = _graph(aut.delta, aut.reachable)
    best = 0
    inner = set()
    for comp in _nontrivial_sccs(g):
        ranks = realized_cycle_ranks(aut.delta, comp, aut.kappa)
        length = max(ranks) - min(ranks) + 1
        if length > best:
            best, inner = length, set()
        if length == best:
            inner.add(max(ranks) % 2)
    polarity = "plus_minus" if len(inner) == 2 else "plus" if inner == {0} else "minus"
    return WagnerClass(best, polarity)
