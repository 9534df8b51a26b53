"""Forgetful parity automata and the robustness DPA.

A forgetful automaton has sentinel states ranked -2 or -1.  Entering one
settles the verdict of the run so far; the sentinel's only edge is an ε-move
back to the state it was entered from, so reading continues as if the
offending letter had not been there.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Sequence

from .automaton import EPS, Dpa, LassoWord, RunTrace, _dot_label, _read_sections, simulate_lasso
from .colors import Color, theta
from .errors import InvalidForgetful
from .rank import Rank


@dataclass(frozen=True)
class ForgetfulDpa:
    alphabet: tuple
    delta: tuple  # per state: successors by symbol, or None for a sentinel
    eps: tuple  # per state: ε-target, or None
    kappa: tuple
    initial: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(None if r is None else tuple(r) for r in self.delta))
        object.__setattr__(self, "eps", tuple(self.eps))
        object.__setattr__(self, "kappa", tuple(Rank(k) for k in self.kappa))
        self.validate()

    @classmethod
    def from_edges(cls, alphabet, n, initial, ranks, edges) -> "ForgetfulDpa":
        table = {}
        eps = [None] * n
        for src, sym, dst in edges:
            if sym == EPS:
                if eps[src] is not None:
                    raise InvalidForgetful(f"state {src} has two ε-edges")
                eps[src] = dst
            else:
                if (src, sym) in table:
                    raise InvalidForgetful(f"two {sym!r}-edges leave state {src}")
                table[src, sym] = dst
        delta = []
        for q in range(n):
            row = [table.get((q, sym)) for sym in alphabet]
            if all(t is None for t in row):
                delta.append(None)
            elif any(t is None for t in row):
                missing = [s for s, t in zip(alphabet, row) if t is None]
                raise InvalidForgetful(f"state {q} lacks edges for {missing}")
            else:
                delta.append(row)
        return cls(alphabet, delta, eps, ranks, initial)

    def validate(self) -> None:
        n = len(self.kappa)
        if len(self.delta) != n or len(self.eps) != n or not 0 <= self.initial < n:
            raise InvalidForgetful("inconsistent state count")
        for q in range(n):
            row, back, rank = self.delta[q], self.eps[q], self.kappa[q]
            if back is not None:
                if row is not None:
                    raise InvalidForgetful(f"state {q} has both ε- and letter edges")
                if rank not in (-2, -1):
                    raise InvalidForgetful(f"ε-state {q} must be ranked -2 or -1, not {rank}")
                if not 0 <= back < n or self.eps[back] is not None:
                    raise InvalidForgetful(f"ε-edge of {q} must return to a non-sentinel state")
            elif row is None:
                raise InvalidForgetful(f"state {q} has no outgoing edges")
            elif rank in (-2, -1) and q != self.initial:
                # only a trivially decided initial state may keep its letters
                raise InvalidForgetful(f"state {q} ranked {rank} needs an ε-edge")
            elif row is not None and not all(0 <= t < n for t in row):
                raise InvalidForgetful(f"state {q} has an edge to an unknown state")

    @property
    def size(self) -> int:
        return len(self.kappa)

    def is_sentinel(self, q: int) -> bool:
        return self.eps[q] is not None

    def symbol_index(self, symbol: str) -> int:
        return self.alphabet.index(symbol)

    def edge_color(self, src: int, symbol: str) -> Color:
        dst = self.delta[src][self.symbol_index(symbol)]
        return theta(self.kappa[src], self.kappa[dst])

    def read(self, q: int, symbol: str) -> tuple:
        """(state entered by the letter, state after any ε-move, color)."""
        dst = self.delta[q][self.symbol_index(symbol)]
        color = theta(self.kappa[q], self.kappa[dst])
        after = self.eps[dst] if self.eps[dst] is not None else dst
        return dst, after, color

    def step(self, q: int, symbol: str) -> int:
        return self.read(q, symbol)[1]

    def serialize(self) -> str:
        lines = [
            "dpa v1",
            "alphabet " + " ".join(self.alphabet),
            f"states {self.size}",
            f"initial {self.initial}",
        ]
        lines += [f"rank {q} {k}" for q, k in enumerate(self.kappa)]
        for q in range(self.size):
            if self.eps[q] is not None:
                lines.append(f"edge {q} {EPS} {self.eps[q]}")
            else:
                lines += [f"edge {q} {s} {t}" for s, t in zip(self.alphabet, self.delta[q])]
        return "\n".join(lines) + "\n"

    def to_dot(self, name: str = "robust") -> str:
        paint = {
            Color.WHITE: "gray",
            Color.GREEN: "green",
            Color.YELLOW: "gold",
            Color.RED: "red",
            Color.BLACK: "black",
        }
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point, label=""];']
        for q, k in enumerate(self.kappa):
            shape = "box" if self.is_sentinel(q) else "circle"
            lines.append(f'  q{q} [shape={shape}, label="q{q}/{k}"];')
        lines.append(f"  init -> q{self.initial};")
        for q in range(self.size):
            if self.eps[q] is not None:
                lines.append(f'  q{q} -> q{self.eps[q]} [label="ε", style=dashed];')
                continue
            grouped = {}
            for s, t in zip(self.alphabet, self.delta[q]):
                grouped.setdefault((t, self.edge_color(q, s)), []).append(s)
            for (t, color), syms in grouped.items():
                lines.append(f'  q{q} -> q{t} [label="{_dot_label(syms)}", color={paint[color]}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def parse_forgetful(text: str) -> ForgetfulDpa:
    """Read a ``dpa v1`` document as a forgetful automaton, ε-edges or not."""
    _, alphabet, n, initial, ranks, edges = _read_sections(text)
    return ForgetfulDpa.from_edges(alphabet, n, initial, ranks, edges)


def forgetful_transform(vigor: Dpa) -> ForgetfulDpa:
    """Replace the settled (negative-rank) part of a vigor DPA by sentinels.

    Every edge into a -2 (-1) state is redirected to a sentinel of its own
    source state, ranked -2 (-1), whose ε-edge returns to that source.
    """
    keep = [q for q in sorted(vigor.reachable) if vigor.kappa[q] >= 0 or q == vigor.initial]
    index = {q: i for i, q in enumerate(keep)}
    delta = [[None] * len(vigor.alphabet) for _ in keep]
    kappa = [vigor.kappa[q] for q in keep]
    eps = [None] * len(keep)
    sentinels = {}
    for q in keep:
        for s, t in enumerate(vigor.delta[q]):
            if t in index:
                delta[index[q]][s] = index[t]
                continue
            key = (q, int(vigor.kappa[t]))
            if key not in sentinels:
                sentinels[key] = len(kappa)
                kappa.append(vigor.kappa[t])
                eps.append(index[q])
                delta.append(None)
            delta[index[q]][s] = sentinels[key]
    return ForgetfulDpa(vigor.alphabet, delta, eps, kappa, index[vigor.initial])


@lru_cache(maxsize=64)
def robustness_dpa(aut: Dpa) -> ForgetfulDpa:
    """The robustness DPA of the language of ``aut``."""
    from .vigor import build_vigor, minimize_vigor

    return forgetful_transform(minimize_vigor(build_vigor(aut)))


# ---------------------------------------------------------------- runs


def forgetful_trace(aut: ForgetfulDpa, w: LassoWord) -> RunTrace:
    """Lasso run over the states reached after each letter and its ε-move."""
    for symbol in w.spoke + w.period:
        aut.symbol_index(symbol)
    return simulate_lasso(aut.step, aut.initial, w)


def accepts_forgetful(aut: ForgetfulDpa, w: LassoWord) -> bool:
    start = aut.kappa[aut.initial]
    if start in (-2, -1):
        return start == -2
    trace = forgetful_trace(aut, w)
    horizon = trace.loop_entry + len(trace.loop_states)
    q = aut.initial
    for t in range(horizon):
        dst, q, _ = aut.read(q, w.letter(t))
        if aut.is_sentinel(dst):
            return aut.kappa[dst] == -2
    return min(aut.kappa[q] for q in trace.loop_states) % 2 == 0


@dataclass(frozen=True)
class ColoredRun:
    trace: RunTrace
    entered: tuple  # state entered by each letter, before any ε-move
    ranks: tuple  # rank of that state
    colors: tuple  # one per letter


def colored_run(aut: ForgetfulDpa, w: LassoWord, n: int) -> ColoredRun:
    if n < 1:
        raise ValueError("need at least one letter")
    trace = forgetful_trace(aut, w)
    entered, ranks, colors = [], [], []
    q = aut.initial
    for t in range(n):
        dst, q, color = aut.read(q, w.letter(t))
        entered.append(dst)
        ranks.append(aut.kappa[dst])
        colors.append(color)
    return ColoredRun(trace, tuple(entered), tuple(ranks), tuple(colors))


def positional_colors(aut: ForgetfulDpa, w: LassoWord, start: int, count: int) -> list:
    """Colors of letters ``start .. start+count-1`` (0-based)."""
    trace = forgetful_trace(aut, w)
    return [aut.edge_color(trace.state_at(t), w.letter(t)) for t in range(start, start + count)]


def steady_period_colors(aut, w: LassoWord) -> list:
    """Colors of the period once the run has settled into its cycle.

    The returned block starts at a position congruent to ``|spoke|`` modulo
    ``|period|`` and spans whole periods and whole run cycles, so its
    average equals the long-run average per letter.
    """
    if isinstance(aut, Dpa):
        aut = robustness_dpa(aut)
    trace = forgetful_trace(aut, w)
    cycle = len(trace.loop_states)
    p = len(w.period)
    start = trace.loop_entry
    start += (len(w.spoke) - start) % p
    return positional_colors(aut, w, start, lcm(cycle, p))
