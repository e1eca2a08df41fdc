"""Dyadic rationals in [0, 1) and their binary words."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    """The number ``num / 2**exp`` with ``num`` odd, or zero as ``(0, 0)``."""

    num: int
    exp: int

    def __post_init__(self):
        zero = self.num == 0 and self.exp == 0
        if not zero and not (self.num % 2 == 1 and 0 < self.num < (1 << self.exp)):
            raise ValueError(f"not a canonical dyadic in [0,1): {self.num}/2^{self.exp}")

    @classmethod
    def make(cls, num: int, exp: int) -> Dyadic:
        """Normalise ``num / 2**exp`` (any exponent, any integer numerator)."""
        if num == 0:
            return ZERO
        while num % 2 == 0 and exp > 0:
            num //= 2
            exp -= 1
        return cls(num, exp)

    @classmethod
    def from_fraction(cls, q) -> Dyadic:
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} is not dyadic")
        return cls.make(q.numerator, den.bit_length() - 1)

    @classmethod
    def from_word(cls, word: str) -> Dyadic:
        if not word:
            return ZERO
        return cls.make(int(word, 2), len(word))

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    @property
    def word(self) -> str:
        """Shortest binary word whose trailing-zero extension is this point."""
        if self.exp == 0:
            return ""
        return format(self.num, "b").zfill(self.exp)

    def padded(self, length: int) -> str:
        """The first ``length`` digits of the binary expansion."""
        w = self.word
        if length <= len(w):
            return w[:length]
        return w + "0" * (length - len(w))

    def in_word(self, word: str) -> bool:
        """True when the point lies in the interval addressed by ``word``."""
        return self.padded(len(word)) == word

    def __lt__(self, other):
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.num << other.exp < other.num << self.exp

    def __str__(self):
        if self.num == 0:
            return "0"
        return f"{self.num}/2^{self.exp}"

    def __repr__(self):
        return f"Dyadic({self})"


ZERO = Dyadic(0, 0)

_POW = re.compile(r"^\s*(\d+)\s*/\s*2\s*\^\s*(\d+)\s*$")


def parse_dyadic(text: str) -> Dyadic:
    """Parse ``a/2^b``, ``a/n`` with n a power of two, or ``0``."""
    m = _POW.match(text)
    if m:
        return Dyadic.make(int(m.group(1)), int(m.group(2))) if int(m.group(1)) else ZERO
    try:
        q = Fraction(text.strip())
    except ValueError:
        raise ValueError(f"cannot parse dyadic {text!r}") from None
    d = Dyadic.from_fraction(q)
    return d


def nu(x) -> int:
    """2-adic valuation with the convention nu(0) = 0."""
    if isinstance(x, Dyadic):
        return -x.exp
    q = Fraction(x)
    if q == 0:
        return 0
    n, d = q.numerator, q.denominator
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    while d % 2 == 0:
        d //= 2
        v -= 1
    return v


def dyadics_up_to(exp: int) -> list[Dyadic]:
    """All dyadics in [0,1) with exponent at most ``exp``, in increasing order."""
    return [Dyadic.make(a, exp) for a in range(1 << exp)]
