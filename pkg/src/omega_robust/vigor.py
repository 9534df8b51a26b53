"""The vigor automaton: a DPA whose state after any prefix carries the rank of
the prefix's last letter.

For each right-congruence class with representative ``u`` a component machine
reads the whole input.  After reading ``x`` it outputs the letter rank of
``x`` when ``x`` lies in the class, and otherwise the infix rank of the
dominant suffix of ``x`` after spoke ``u`` (dominant suffixes taken with
spokes ``u`` followed by the consumed part of ``x``).  The two agree on
single-class languages; on the others only the in-class outputs are ever read
by the product, and they have to be the true letter ranks.

Components are learned with an observation table; equivalence queries are
answered exactly by comparing the conjecture with the finite machine of
analyzer signatures.  The vigor automaton is the reachable product of the
class automaton with all components, ranked by the component of the current
class.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .automaton import Dpa
from .errors import Diverged
from .natural import CongruenceClasses, congruence_classes, infix_ranker, minimize_ranks
from .rank import Rank
from .suffixes import LetterAnalyzer

DEFAULT_BOUND = 4096


def default_depth(aut: Dpa) -> int:
    env = os.environ.get("OMEGA_ROBUST_EQ_DEPTH")
    if env:
        return int(env)
    top = max((int(k) for k in aut.kappa if k.is_finite), default=0)
    return 2 * aut.size * (top + 2)


def membership_value(aut: Dpa, u: Sequence[str], x: Sequence[str]) -> Rank:
    """Rank of the dominant suffix of ``x`` after spoke ``u`` (``aut`` rank-minimized)."""
    q_u = aut.run(u)
    analyzer = LetterAnalyzer(infix_ranker(aut), base=q_u, value_state=q_u)
    analyzer.feed(x)
    return analyzer.current_rank()


@dataclass(frozen=True)
class MooreMachine:
    alphabet: tuple
    delta: tuple
    output: tuple
    initial: int = 0

    def run(self, word: Sequence[str]) -> int:
        index = {s: i for i, s in enumerate(self.alphabet)}
        q = self.initial
        for symbol in word:
            q = self.delta[q][index[symbol]]
        return q

    @property
    def size(self) -> int:
        return len(self.delta)


class ComponentReader:
    """Streams a word and reports the component output for one class."""

    def __init__(self, aut: Dpa, u: Sequence[str], signature: tuple | None = None):
        self.ranker = infix_ranker(aut)
        self.class_of = self.ranker.classes.class_of
        self.q_u = aut.run(u)
        if signature is None:
            self.plain = LetterAnalyzer(self.ranker)
            self.local = LetterAnalyzer(self.ranker, base=self.q_u, value_state=self.q_u)
        else:
            self.plain = LetterAnalyzer.from_signature(self.ranker, signature[0])
            self.local = LetterAnalyzer.from_signature(self.ranker, signature[1], self.q_u)

    def signature(self) -> tuple:
        return (self.plain.signature(), self.local.signature())

    def output(self) -> Rank:
        if self.class_of[self.plain.state] == self.class_of[self.q_u]:
            return self.plain.current_rank()
        return self.local.current_rank()

    def step(self, symbol: str) -> Rank:
        self.plain.step(symbol)
        self.local.step(symbol)
        return self.output()


def component_value(aut: Dpa, u: Sequence[str], x: Sequence[str]) -> Rank:
    reader = ComponentReader(aut, u)
    for symbol in x:
        reader.step(symbol)
    return reader.output()


def reference_machine(aut: Dpa, u: Sequence[str], bound: int = DEFAULT_BOUND) -> MooreMachine:
    """Finite machine over reader signatures computing ``component_value(aut, u, ·)``."""
    start = ComponentReader(aut, u)
    index = {start.signature(): 0}
    order = [start.signature()]
    outputs = [start.output()]
    delta = []
    i = 0
    while i < len(order):
        row = []
        for symbol in aut.alphabet:
            reader = ComponentReader(aut, u, order[i])
            rank = reader.step(symbol)
            sig = reader.signature()
            if sig not in index:
                if len(order) >= bound:
                    raise Diverged(f"more than {bound} analyzer states for class of {u!r}")
                index[sig] = len(order)
                order.append(sig)
                outputs.append(rank)
            row.append(index[sig])
        delta.append(tuple(row))
        i += 1
    return MooreMachine(aut.alphabet, tuple(delta), tuple(outputs))


def minimize_moore(m: MooreMachine) -> MooreMachine:
    """Coarsest output-respecting partition, renumbered in shortlex BFS order."""
    block = {q: m.output[q] for q in range(m.size)}
    while True:
        sig = {q: (block[q],) + tuple(block[t] for t in m.delta[q]) for q in range(m.size)}
        ids = {}
        refined = {q: ids.setdefault(sig[q], len(ids)) for q in range(m.size)}
        if len(ids) == len(set(block.values())):
            break
        block = refined
    return _renumber(m.alphabet, m.initial, lambda q: m.delta[q], lambda q: block[q], m.output)


def _renumber(alphabet, initial, succ, key, output) -> MooreMachine:
    order = {key(initial): 0}
    rep = [initial]
    queue = deque([initial])
    delta = []
    while queue:
        q = queue.popleft()
        row = []
        for t in succ(q):
            k = key(t)
            if k not in order:
                order[k] = len(rep)
                rep.append(t)
                queue.append(t)
            row.append(order[k])
        delta.append(tuple(row))
    return MooreMachine(tuple(alphabet), tuple(delta), tuple(output[q] for q in rep))


class ObservationTable:
    """Rows are access words, columns distinguishing suffixes, cells membership values."""

    def __init__(self, alphabet: Sequence[str], query):
        self.alphabet = tuple(alphabet)
        self.query = query
        self.prefixes = [()]
        self.suffixes = [()]
        self.cells = {}

    def cell(self, word: tuple):
        value = self.cells.get(word)
        if value is None:
            value = self.cells[word] = self.query(word)
        return value

    def row(self, prefix: tuple) -> tuple:
        return tuple(self.cell(prefix + e) for e in self.suffixes)

    def _unclosed(self):
        rows = {self.row(p) for p in self.prefixes}
        for p in self.prefixes:
            for s in self.alphabet:
                if self.row(p + (s,)) not in rows:
                    return p + (s,)
        return None

    def _inconsistent(self):
        by_row = {}
        for p in self.prefixes:
            by_row.setdefault(self.row(p), []).append(p)
        for group in by_row.values():
            for p1, p2 in zip(group, group[1:]):
                for s in self.alphabet:
                    for e in self.suffixes:
                        if self.cell(p1 + (s,) + e) != self.cell(p2 + (s,) + e):
                            return (s,) + e
        return None

    def stabilize(self, bound: int) -> None:
        while True:
            missing = self._unclosed()
            if missing is not None:
                self.prefixes.append(missing)
            else:
                suffix = self._inconsistent()
                if suffix is None:
                    return
                self.suffixes.append(suffix)
            if len(self.prefixes) > bound:
                raise Diverged(f"observation table exceeded {bound} rows")

    def add_counterexample(self, word: tuple) -> None:
        for i in range(len(word) + 1):
            suffix = word[i:]
            if suffix not in self.suffixes:
                self.suffixes.append(suffix)

    def conjecture(self) -> MooreMachine:
        """Hypothesis machine built from the distinct rows."""
        reps = {}
        for p in self.prefixes:
            reps.setdefault(self.row(p), p)
        hyp = _renumber(
            self.alphabet,
            (),
            lambda p: [reps[self.row(p + (s,))] for s in self.alphabet],
            self.row,
            {p: self.cell(p) for p in reps.values()},
        )
        return hyp


def _find_counterexample(hyp: MooreMachine, ref: MooreMachine, depth: int):
    """Shortlex-least word (within ``depth``) on which the two machines disagree."""
    start = (hyp.initial, ref.initial)
    seen = {start: ()}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        word = seen[pair]
        if hyp.output[pair[0]] != ref.output[pair[1]]:
            return word
        if len(word) >= depth:
            continue
        for i, s in enumerate(hyp.alphabet):
            nxt = (hyp.delta[pair[0]][i], ref.delta[pair[1]][i])
            if nxt not in seen:
                seen[nxt] = word + (s,)
                queue.append(nxt)
    return None


@dataclass(frozen=True)
class VigorComponent:
    representative: tuple  # class representative u
    dpa: Dpa  # states are vigor-equivalence classes, initial 0
    access: tuple  # shortlex-least word reaching each state

    @property
    def ranks(self) -> tuple:
        return self.dpa.kappa


def learn_vigor_component(
    aut: Dpa, u: Sequence[str], depth: int | None = None, bound: int = DEFAULT_BOUND
) -> VigorComponent:
    u = tuple(u)
    depth = default_depth(aut) if depth is None else depth
    if depth < 1:
        raise ValueError("equivalence depth must be positive")
    reference = reference_machine(aut, u, bound)
    table = ObservationTable(aut.alphabet, lambda x: component_value(aut, u, x))
    while True:
        table.stabilize(bound)
        hyp = table.conjecture()
        cex = _find_counterexample(hyp, reference, depth)
        if cex is None:
            break
        table.add_counterexample(cex)
    access = _access_words(hyp)
    dpa = Dpa(aut.alphabet, hyp.delta, hyp.output, hyp.initial)
    return VigorComponent(u, dpa, access)


def _access_words(m: MooreMachine) -> tuple:
    words = {m.initial: ()}
    queue = deque([m.initial])
    while queue:
        q = queue.popleft()
        for s, t in zip(m.alphabet, m.delta[q]):
            if t not in words:
                words[t] = words[q] + (s,)
                queue.append(t)
    return tuple(words[q] for q in range(m.size))


@dataclass(frozen=True)
class VigorConstruction:
    source: Dpa  # rank-minimized input
    classes: CongruenceClasses
    components: tuple
    dpa: Dpa
    labels: tuple  # (class id, component states) per vigor state


def class_automaton(aut: Dpa, classes: CongruenceClasses) -> tuple:
    """Transition table of the quotient by the right congruence."""
    rows = []
    for u in classes.representatives:
        q = aut.run(u)
        rows.append(tuple(classes.class_of[t] for t in aut.delta[q]))
    return tuple(rows)


def vigor_construction(aut: Dpa, depth: int | None = None, bound: int = DEFAULT_BOUND):
    source = minimize_ranks(aut)
    classes = congruence_classes(source)
    components = tuple(
        learn_vigor_component(source, u, depth, bound) for u in classes.representatives
    )
    quotient = class_automaton(source, classes)
    start = (classes.class_of[source.initial], tuple(c.dpa.initial for c in components))
    index = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        cls, states = order[i]
        row = []
        for s in range(len(source.alphabet)):
            nxt = (quotient[cls][s], tuple(c.dpa.delta[q][s] for c, q in zip(components, states)))
            if nxt not in index:
                if len(order) >= bound:
                    raise Diverged(f"vigor product exceeded {bound} states")
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        delta.append(row)
        i += 1
    kappa = [components[cls].dpa.kappa[states[cls]] for cls, states in order]
    dpa = Dpa(source.alphabet, delta, kappa, 0)
    return VigorConstruction(source, classes, components, dpa, tuple(order))


def build_vigor(aut: Dpa, depth: int | None = None, bound: int = DEFAULT_BOUND) -> Dpa:
    return vigor_construction(aut, depth, bound).dpa


def minimize_vigor(vigor: Dpa) -> Dpa:
    """Merge states with the same rank behaviour; letter ranks are unchanged."""
    m = minimize_moore(MooreMachine(vigor.alphabet, vigor.delta, vigor.kappa, vigor.initial))
    return Dpa(m.alphabet, m.delta, m.output, m.initial)
