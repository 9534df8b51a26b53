"""Deterministic parity automata: data model, the ``dpa v1`` text format, runs,
SCC analysis and language-level decision procedures.

A run is accepting when the least rank seen infinitely often is even.  Ranks are
:class:`~omega_robust.rank.Rank` values; plain input automata use naturals only,
derived automata may carry -2/-1 (forced acceptance/rejection) or infinity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    AlphabetMismatch,
    BadHeader,
    BadRank,
    DuplicateEdge,
    MissingEdge,
    UnknownSymbol,
)
from .rank import Rank

Word = tuple  # tuple of symbol tokens

EPS = "eps"


@dataclass(frozen=True)
class LassoWord:
    """The infinite word ``spoke · period^ω``."""

    spoke: Word
    period: Word

    def __post_init__(self):
        object.__setattr__(self, "spoke", tuple(self.spoke))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("period must be non-empty")

    def letter(self, t: int) -> str:
        """Letter at 0-based position ``t``."""
        if t < len(self.spoke):
            return self.spoke[t]
        return self.period[(t - len(self.spoke)) % len(self.period)]

    def prefix(self, n: int) -> Word:
        return tuple(self.letter(t) for t in range(n))

    def canonical(self) -> "LassoWord":
        return canonicalize(self)

    def __str__(self) -> str:
        return f"{format_word(self.spoke)}({format_word(self.period)})^ω"


def primitive_root(period: Sequence) -> tuple:
    n = len(period)
    for size in range(1, n + 1):
        if n % size == 0 and tuple(period[:size]) * (n // size) == tuple(period):
            return tuple(period[:size])
    return tuple(period)


def canonicalize(w: LassoWord) -> LassoWord:
    """Primitive period, then fold trailing spoke letters into a rotated period."""
    period = primitive_root(w.period)
    spoke = list(w.spoke)
    while spoke and spoke[-1] == period[-1]:
        spoke.pop()
        period = (period[-1],) + period[:-1]
    return LassoWord(tuple(spoke), period)


def format_word(word: Iterable[str]) -> str:
    word = tuple(word)
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return ",".join(word)


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Bare strings for single-character alphabets, comma-separated tokens otherwise."""
    text = text.strip()
    if not text:
        return ()
    if "," in text or not all(len(s) == 1 for s in alphabet):
        tokens = tuple(t.strip() for t in text.split(","))
    else:
        tokens = tuple(text)
    for t in tokens:
        if t not in alphabet:
            raise UnknownSymbol(f"unknown symbol {t!r}")
    return tokens


def parse_lasso(text: str, alphabet: Sequence[str]) -> LassoWord:
    if ";" not in text:
        raise ValueError(f"lasso words are written SPOKE;PERIOD, got {text!r}")
    spoke, period = text.split(";", 1)
    period_word = parse_word(period, alphabet)
    if not period_word:
        raise ValueError("period must be non-empty")
    return LassoWord(parse_word(spoke, alphabet), period_word)


@dataclass(frozen=True)
class RunTrace:
    """Run of an automaton on a canonical lasso word.

    ``states[t]`` is the state after ``t`` letters.  From ``loop_entry`` on the
    run repeats ``loop_states`` forever, in step with the period.
    """

    word: LassoWord
    prefix_states: tuple
    loop_entry: int
    loop_states: tuple

    def state_at(self, t: int) -> int:
        if t < self.loop_entry:
            return self.prefix_states[t]
        return self.loop_states[(t - self.loop_entry) % len(self.loop_states)]


@dataclass(frozen=True)
class SccInfo:
    components: tuple  # tuple of frozensets of states
    component_of: dict  # state -> component index, absent for transient states
    kinds: tuple  # "accepting" | "rejecting" | "mixed" per component
    terminal: tuple  # "accepting" | "rejecting" | None per component
    transient: frozenset


@dataclass(frozen=True, eq=False)
class Dpa:
    alphabet: tuple
    delta: tuple  # delta[state][symbol index]
    kappa: tuple  # Rank per state
    initial: int = 0
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(self, "kappa", tuple(Rank(k) for k in self.kappa))
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.alphabet)})
        if len(self._index) != len(self.alphabet) or not self.alphabet:
            raise ValueError("alphabet must be a non-empty set of distinct symbols")
        if len(self.delta) != len(self.kappa):
            raise ValueError("delta and kappa disagree on the number of states")
        if not 0 <= self.initial < len(self.delta):
            raise ValueError("initial state out of range")
        n, k = len(self.delta), len(self.alphabet)
        for row in self.delta:
            if len(row) != k or not all(0 <= t < n for t in row):
                raise ValueError("transition table is not total over the states")

    def __eq__(self, other):
        if not isinstance(other, Dpa):
            return NotImplemented
        return (self.alphabet, self.delta, self.kappa, self.initial) == (
            other.alphabet,
            other.delta,
            other.kappa,
            other.initial,
        )

    def __hash__(self):
        return hash((self.alphabet, self.delta, self.kappa, self.initial))

    @property
    def size(self) -> int:
        return len(self.delta)

    def symbol_index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise UnknownSymbol(f"unknown symbol {symbol!r}") from None

    def step(self, q: int, symbol: str) -> int:
        return self.delta[q][self.symbol_index(symbol)]

    def run(self, word: Iterable[str], start: int | None = None) -> int:
        q = self.initial if start is None else start
        for symbol in word:
            q = self.delta[q][self.symbol_index(symbol)]
        return q

    def successors(self, q: int) -> set:
        return set(self.delta[q])

    def with_ranks(self, kappa: Sequence[int]) -> "Dpa":
        return Dpa(self.alphabet, self.delta, kappa, self.initial)

    def with_initial(self, q: int) -> "Dpa":
        return Dpa(self.alphabet, self.delta, self.kappa, q)

    @cached_property
    def reachable(self) -> frozenset:
        return frozenset(reachable_from(self.delta, [self.initial]))

    @cached_property
    def universal_states(self) -> frozenset:
        bad = _cycle_states(self.delta, range(self.size), self.kappa, parity=1)
        return frozenset(range(self.size)) - _can_reach(self.delta, bad)

    @cached_property
    def empty_states(self) -> frozenset:
        good = _cycle_states(self.delta, range(self.size), self.kappa, parity=0)
        return frozenset(range(self.size)) - _can_reach(self.delta, good)


def reachable_from(delta, sources) -> set:
    seen = set(sources)
    todo = list(seen)
    while todo:
        q = todo.pop()
        for t in delta[q]:
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def _can_reach(delta, targets) -> frozenset:
    """States from which some state of ``targets`` is reachable."""
    preds = {}
    for q, row in enumerate(delta):
        for t in row:
            preds.setdefault(t, set()).add(q)
    seen = set(targets)
    todo = list(seen)
    while todo:
        q = todo.pop()
        for p in preds.get(q, ()):
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return frozenset(seen)


def _graph(delta, nodes) -> nx.DiGraph:
    nodes = set(nodes)
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from((q, t) for q in nodes for t in delta[q] if t in nodes)
    return g


def _nontrivial_sccs(g: nx.DiGraph):
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1 or any(g.has_edge(q, q) for q in comp):
            yield comp


def _cycle_states(delta, nodes, kappa, parity: int) -> set:
    """States lying on some cycle inside ``nodes`` whose least rank has ``parity``."""
    nodes = set(nodes)
    found = set()
    for d in sorted({int(kappa[q]) for q in nodes}):
        if d % 2 != parity:
            continue
        g = _graph(delta, [q for q in nodes if kappa[q] >= d])
        for comp in _nontrivial_sccs(g):
            if any(kappa[q] == d for q in comp):
                found |= comp
    return found


def realized_cycle_ranks(delta, nodes, kappa) -> set:
    """Ranks that occur as the least rank of some cycle inside ``nodes``."""
    nodes = set(nodes)
    out = set()
    for d in sorted({int(kappa[q]) for q in nodes}):
        g = _graph(delta, [q for q in nodes if kappa[q] >= d])
        if any(any(kappa[q] == d for q in comp) for comp in _nontrivial_sccs(g)):
            out.add(d)
    return out


# ---------------------------------------------------------------- text format


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_document(text: str):
    """Parse a ``dpa v1`` document into a :class:`Dpa` or, if it has ``eps``
    edges or sentinel ranks, a forgetful automaton."""
    header, alphabet, n, initial, ranks, edges = _read_sections(text)
    has_eps = any(sym == EPS for _, sym, _ in edges)
    if has_eps:
        from .forgetful import ForgetfulDpa

        return ForgetfulDpa.from_edges(alphabet, n, initial, ranks, edges)
    return _build_dpa(alphabet, n, initial, ranks, edges, plain=False)


def parse_dpa(text: str, *, plain: bool = True) -> Dpa:
    """Parse a ``dpa v1`` document describing a total, ε-free automaton.

    With ``plain`` (the default) every rank must be a natural number.
    """
    _, alphabet, n, initial, ranks, edges = _read_sections(text)
    if any(sym == EPS for _, sym, _ in edges):
        raise UnknownSymbol("eps edges are only allowed in forgetful automata")
    return _build_dpa(alphabet, n, initial, ranks, edges, plain=plain)


def _read_sections(text: str):
    lines = [(no, _strip(raw)) for no, raw in enumerate(text.splitlines(), 1)]
    lines = [(no, ln) for no, ln in lines if ln]
    if not lines or lines[0][1].split() != ["dpa", "v1"]:
        raise BadHeader("document must start with 'dpa v1'")
    alphabet = None
    n = None
    initial = None
    ranks = {}
    edges = []
    for no, ln in lines[1:]:
        parts = ln.split()
        key, args = parts[0], parts[1:]
        try:
            if key == "alphabet":
                if alphabet is not None or not args:
                    raise BadHeader(f"line {no}: bad alphabet declaration")
                if EPS in args or len(set(args)) != len(args):
                    raise BadHeader(f"line {no}: alphabet tokens must be distinct and not 'eps'")
                alphabet = tuple(args)
            elif key == "states":
                (count,) = args
                n = int(count)
                if n < 1:
                    raise BadHeader(f"line {no}: need at least one state")
            elif key == "initial":
                (q,) = args
                initial = int(q)
            elif key == "rank":
                q, value = args
                q = int(q)
                if q in ranks:
                    raise BadRank(f"line {no}: state {q} ranked twice")
                try:
                    ranks[q] = Rank.parse(value)
                except ValueError:
                    raise BadRank(f"line {no}: bad rank {value!r}") from None
            elif key == "edge":
                src, sym, dst = args
                edges.append((int(src), sym, int(dst)))
            else:
                raise BadHeader(f"line {no}: unknown directive {key!r}")
        except ValueError:
            raise BadHeader(f"line {no}: malformed {key!r} line") from None
    if alphabet is None or n is None or initial is None:
        raise BadHeader("alphabet, states and initial are required")
    if not 0 <= initial < n:
        raise BadHeader("initial state out of range")
    for q in ranks:
        if not 0 <= q < n:
            raise BadRank(f"rank given for unknown state {q}")
    missing = [q for q in range(n) if q not in ranks]
    if missing:
        raise BadRank(f"states without rank: {missing}")
    for src, sym, dst in edges:
        if not (0 <= src < n and 0 <= dst < n):
            raise BadHeader(f"edge {src} {sym} {dst} mentions an unknown state")
        if sym != EPS and sym not in alphabet:
            raise UnknownSymbol(f"unknown symbol {sym!r}")
    return "dpa v1", alphabet, n, initial, [ranks[q] for q in range(n)], edges


def _build_dpa(alphabet, n, initial, ranks, edges, plain) -> Dpa:
    if plain:
        for q, r in enumerate(ranks):
            if not r.is_finite:
                raise BadRank(f"state {q} has rank {r}; plain automata need naturals")
    table = {}
    for src, sym, dst in edges:
        if (src, sym) in table:
            raise DuplicateEdge(f"two {sym!r}-edges leave state {src}")
        table[src, sym] = dst
    delta = []
    for q in range(n):
        row = []
        for sym in alphabet:
            if (q, sym) not in table:
                raise MissingEdge(f"state {q} has no {sym!r}-edge")
            row.append(table[q, sym])
        delta.append(row)
    return Dpa(alphabet, delta, ranks, initial)


def serialize_dpa(aut) -> str:
    """Canonical ``dpa v1`` text; ``parse`` of the result rebuilds ``aut``."""
    if not isinstance(aut, Dpa):
        return aut.serialize()
    lines = [
        "dpa v1",
        "alphabet " + " ".join(aut.alphabet),
        f"states {aut.size}",
        f"initial {aut.initial}",
    ]
    lines += [f"rank {q} {k}" for q, k in enumerate(aut.kappa)]
    for q, row in enumerate(aut.delta):
        lines += [f"edge {q} {sym} {t}" for sym, t in zip(aut.alphabet, row)]
    return "\n".join(lines) + "\n"


def _dot_label(symbols) -> str:
    return ",".join(symbols).replace('"', '\\"')


def export_dot(aut, name: str = "dpa") -> str:
    """Graphviz rendering.  Forgetful automata get their edges painted by color."""
    if not isinstance(aut, Dpa):
        return aut.to_dot(name)
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point, label=""];']
    for q, k in enumerate(aut.kappa):
        lines.append(f'  q{q} [shape=circle, label="q{q}/{k}"];')
    lines.append(f"  init -> q{aut.initial};")
    grouped = {}
    for q, row in enumerate(aut.delta):
        for sym, t in zip(aut.alphabet, row):
            grouped.setdefault((q, t), []).append(sym)
    for (q, t), syms in grouped.items():
        lines.append(f'  q{q} -> q{t} [label="{_dot_label(syms)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- runs


def run_state(aut: Dpa, word: Iterable[str]) -> int:
    return aut.run(word)


def simulate_lasso(step, start, w: LassoWord) -> RunTrace:
    """Generic lasso simulation; ``step(q, symbol)`` gives the next state."""
    w = canonicalize(w)
    states = [start]
    q = start
    for symbol in w.spoke:
        q = step(q, symbol)
        states.append(q)
    base = len(w.spoke)
    p = len(w.period)
    seen = {(q, 0): base}
    t = base
    while True:
        q = step(q, w.period[(t - base) % p])
        t += 1
        key = (q, (t - base) % p)
        if key in seen:
            entry = seen[key]
            return RunTrace(w, tuple(states[:entry]), entry, tuple(states[entry:t]))
        seen[key] = t
        states.append(q)


def run_lasso(aut: Dpa, w: LassoWord) -> RunTrace:
    for symbol in w.spoke + w.period:
        aut.symbol_index(symbol)
    return simulate_lasso(aut.step, aut.initial, w)


def accepts(aut: Dpa, w: LassoWord) -> bool:
    trace = run_lasso(aut, w)
    return min(aut.kappa[q] for q in trace.loop_states) % 2 == 0


# ---------------------------------------------------------------- SCCs


def sccs(aut: Dpa) -> SccInfo:
    nodes = aut.reachable
    g = _graph(aut.delta, nodes)
    comps = [frozenset(c) for c in _nontrivial_sccs(g)]
    comps.sort(key=min)
    component_of = {q: i for i, c in enumerate(comps) for q in c}
    kinds = []
    for c in comps:
        even = _cycle_states(aut.delta, c, aut.kappa, 0)
        odd = _cycle_states(aut.delta, c, aut.kappa, 1)
        kinds.append("mixed" if even and odd else "accepting" if even else "rejecting")
    below = []
    for c in comps:
        reach = reachable_from(aut.delta, c)
        below.append({component_of[q] for q in reach if q in component_of})
    terminal = []
    for i in range(len(comps)):
        ks = {kinds[j] for j in below[i]}
        terminal.append(ks.pop() if ks in ({"accepting"}, {"rejecting"}) else None)
    transient = frozenset(q for q in nodes if q not in component_of)
    return SccInfo(tuple(comps), component_of, tuple(kinds), tuple(terminal), transient)


def is_universal_from(aut: Dpa, q: int) -> bool:
    return q in aut.universal_states


def is_empty_from(aut: Dpa, q: int) -> bool:
    return q in aut.empty_states


def complement(aut: Dpa) -> Dpa:
    return aut.with_ranks([k + 1 for k in aut.kappa])


# ---------------------------------------------------------------- equivalence


def _product(a1: Dpa, q1: int, a2: Dpa, q2: int):
    start = (q1, q2)
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        p1, p2 = order[i]
        row = []
        for s in range(len(a1.alphabet)):
            t = (a1.delta[p1][s], a2.delta[p2][s])
            if t not in index:
                index[t] = len(order)
                order.append(t)
            row.append(index[t])
        delta.append(row)
        i += 1
    k1 = [a1.kappa[p] for p, _ in order]
    k2 = [a2.kappa[p] for _, p in order]
    return delta, k1, k2


def _two_parity_nonempty(delta, k1, k2, p1: int, p2: int) -> bool:
    """Some cycle has least ``k1`` of parity ``p1`` and least ``k2`` of parity ``p2``."""
    nodes = range(len(delta))
    for d1 in sorted({int(k) for k in k1 if k % 2 == p1}):
        for d2 in sorted({int(k) for k in k2 if k % 2 == p2}):
            g = _graph(delta, [q for q in nodes if k1[q] >= d1 and k2[q] >= d2])
            for comp in _nontrivial_sccs(g):
                if any(k1[q] == d1 for q in comp) and any(k2[q] == d2 for q in comp):
                    return True
    return False


def lang_equiv(a1: Dpa, q1: int, a2: Dpa, q2: int) -> bool:
    if a1.alphabet != a2.alphabet:
        raise AlphabetMismatch("automata are over different alphabets")
    delta, k1, k2 = _product(a1, q1, a2, q2)
    return not (
        _two_parity_nonempty(delta, k1, k2, 0, 1) or _two_parity_nonempty(delta, k1, k2, 1, 0)
    )


def equivalent(a1: Dpa, a2: Dpa) -> bool:
    return lang_equiv(a1, a1.initial, a2, a2.initial)


def shortlex_words(alphabet: Sequence[str], max_len: int, min_len: int = 0):
    """All words with ``min_len <= |w| <= max_len`` in shortlex order."""
    layer = [()]
    for n in range(max_len + 1):
        if n >= min_len:
            yield from layer
        layer = [w + (s,) for w in layer for s in alphabet]


def bounded_lassos(alphabet: Sequence[str], max_spoke: int, max_period: int):
    for spoke in shortlex_words(alphabet, max_spoke):
        for period in shortlex_words(alphabet, max_period, 1):
            yield LassoWord(spoke, period)


def bfs_words(aut: Dpa, start: int | None = None) -> dict:
    """Shortlex-least word reaching each reachable state."""
    start = aut.initial if start is None else start
    words = {start: ()}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for sym, t in zip(aut.alphabet, aut.delta[q]):
            if t not in words:
                words[t] = words[q] + (sym,)
                queue.append(t)
    return words
