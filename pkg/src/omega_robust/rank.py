"""Extended ranks: -2 and -1 for forced acceptance/rejection, naturals, and infinity.

Ranks are ``int`` subclasses so that ``min``/``max`` and comparisons stay cheap.
The infinite rank is a large odd integer; nothing ever adds to a rank, so the
encoding never leaks into arithmetic.
"""

from __future__ import annotations

_INF_VALUE = 2**31 - 1


class Rank(int):
    __slots__ = ()

    def __new__(cls, value: int) -> "Rank":
        value = int(value)
        if value < -2 or (value > 2**30 and value != _INF_VALUE):
            raise ValueError(f"not a rank: {value}")
        return super().__new__(cls, value)

    @classmethod
    def parse(cls, text: str) -> "Rank":
        text = text.strip()
        if text in ("inf", "∞"):
            return INFINITE
        return cls(int(text))

    @property
    def is_finite(self) -> bool:
        return 0 <= self < _INF_VALUE

    @property
    def is_sentinel(self) -> bool:
        return self < 0

    @property
    def is_infinite(self) -> bool:
        return int(self) == _INF_VALUE

    @property
    def is_even(self) -> bool:
        if not self.is_finite:
            raise ValueError(f"rank {self} has no parity")
        return self % 2 == 0

    def __repr__(self) -> str:
        return f"Rank({self})"

    def __str__(self) -> str:
        return "inf" if self.is_infinite else str(int(self))

    def __format__(self, spec: str) -> str:
        if self.is_infinite:
            # numeric presentation types make no sense for the word "inf"
            return format(str(self), spec.rstrip("bcdnoxX"))
        return format(int(self), spec)


NEG_TWO = Rank(-2)
NEG_ONE = Rank(-1)
INFINITE = Rank(_INF_VALUE)


def fin(n: int) -> Rank:
    if n < 0:
        raise ValueError("finite ranks are non-negative")
    return Rank(n)


def accepting_parity(value: int) -> bool:
    """Acceptance reading of a rank that may be a sentinel: -2 accepts, -1 rejects."""
    return value % 2 == 0
