"""Scalars: binomials with the vanishing convention, series coefficients, fields."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


def binom(a: int, b: int) -> int:
    """Generalized binomial coefficient a(a-1)...(a-b+1)/b!.

    Zero for b < 0, and zero for 0 <= a < b.  Negative upper index is allowed
    (binom(-2, 1) == -2).
    """
    if b < 0:
        return 0
    if a >= 0:
        return math.comb(a, b)
    # upper negation: binom(a, b) = (-1)^b binom(b - a - 1, b)
    return (-1) ** b * math.comb(b - a - 1, b)


def series_coeff(m: int, i: int) -> int:
    """Coefficient of x**i in the power series of (1 + x)**m."""
    if i < 0:
        raise ValueError("series index must be nonnegative")
    if m >= 0:
        return binom(m, i)
    return (-1) ** i * binom(i - m - 1, -m - 1)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Ring:
    """The rationals (``p is None``) or the prime field GF(p).

    Elements are plain Python values: ``Fraction`` over QQ and ``int`` in
    ``range(p)`` over GF(p).  Arithmetic on raw values is done with the usual
    operators and then passed through :meth:`norm`.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def norm(self, x):
        if self.p is None:
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    __call__ = norm

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def div(self, a, b):
        return self.norm(a * self.inv(b))

    def __eq__(self, other):
        return isinstance(other, Ring) and other.p == self.p

    def __hash__(self):
        return hash(("Ring", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    __str__ = __repr__

    @classmethod
    def parse(cls, text: str) -> "Ring":
        """Inverse of ``str``: accepts ``QQ`` and ``GF(p)``."""
        text = text.strip()
        if text == "QQ":
            return QQ
        if text.startswith("GF(") and text.endswith(")"):
            return GF(int(text[3:-1]))
        raise ValueError(f"unknown ring {text!r}")


QQ = Ring()


@lru_cache(maxsize=None)
def GF(p: int) -> Ring:
    return Ring(p)


def format_scalar(x) -> str:
    """Exact decimal string of a ring element ("3", "-1/2")."""
    return str(x)
