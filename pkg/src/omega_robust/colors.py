"""Letter colors, forgetful prefixes and scores."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .automaton import Dpa, LassoWord
from .errors import EmptyInfix
from .natural import infix_ranker
from .rank import Rank
from .suffixes import LetterAnalyzer, initial_rank


class Color(Enum):
    WHITE = "white"
    GREEN = "green"
    YELLOW = "yellow"
    RED = "red"
    BLACK = "black"

    def __str__(self) -> str:
        return self.value.capitalize()

    @property
    def dual(self) -> "Color":
        return _DUAL[self]


_DUAL = {
    Color.WHITE: Color.BLACK,
    Color.BLACK: Color.WHITE,
    Color.GREEN: Color.RED,
    Color.RED: Color.GREEN,
    Color.YELLOW: Color.YELLOW,
}


def theta(d: Rank, d_next: Rank) -> Color:
    """Color of a letter whose rank is ``d_next`` when the previous one was ``d``.

    A letter whose rank is infinite cannot close any loop; it is neutral and
    colored yellow.  An infinite previous rank compares above every finite one.
    """
    if d_next == -2:
        return Color.WHITE
    if d_next == -1:
        return Color.BLACK
    if d_next.is_infinite or d < d_next:
        return Color.YELLOW
    return Color.GREEN if d_next % 2 == 0 else Color.RED


def forgetful_prefix(aut: Dpa, prefix: Sequence[str]) -> tuple:
    """Drop every letter whose rank, appended to what was kept so far, is negative."""
    kept = ()
    ranker = infix_ranker(aut)
    for symbol in prefix:
        analyzer = LetterAnalyzer(ranker)
        analyzer.feed(kept)
        if analyzer.step(symbol) >= 0:
            kept += (symbol,)
    return kept


def letter_colors(aut: Dpa, w: LassoWord, n: int) -> list:
    """Colors of the first ``n`` letters, recomputed from scratch at each step."""
    ranker = infix_ranker(aut)
    kept = ()
    previous = initial_rank(aut)
    colors = []
    for symbol in w.prefix(n):
        analyzer = LetterAnalyzer(ranker)
        analyzer.feed(kept)
        current = analyzer.step(symbol)
        colors.append(theta(previous, current))
        if current >= 0:
            # a dropped letter leaves the previous rank where it was
            kept += (symbol,)
            previous = current
    return colors


@dataclass(frozen=True)
class ColorCounts:
    w: int = 0
    g: int = 0
    y: int = 0
    r: int = 0
    b: int = 0

    @property
    def total(self) -> int:
        return self.w + self.g + self.y + self.r + self.b


@dataclass(frozen=True)
class Score:
    wb: int
    gr: int


@dataclass(frozen=True, order=True)
class AvgScore:
    wb_avg: Fraction
    gr_avg: Fraction

    def __str__(self) -> str:
        return f"({format_fraction(self.wb_avg)},{format_fraction(self.gr_avg)})"


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def score(colors: Sequence[Color]) -> tuple:
    colors = list(colors)
    if not colors:
        raise EmptyInfix("cannot score an empty infix")
    counts = ColorCounts(
        w=colors.count(Color.WHITE),
        g=colors.count(Color.GREEN),
        y=colors.count(Color.YELLOW),
        r=colors.count(Color.RED),
        b=colors.count(Color.BLACK),
    )
    s = Score(counts.w - counts.b, counts.g - counts.r)
    n = len(colors)
    return counts, s, AvgScore(Fraction(s.wb, n), Fraction(s.gr, n))
