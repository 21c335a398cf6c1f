"""Exact scalar arithmetic over Q and Q(i).

Every matrix entry in this package is a :class:`GaussianRational`, so all
predicates and certificate checks downstream are decided by bit-exact
structural equality. A value is stored as a reduced integer triple
``(a, b, d)`` meaning ``(a + b*i) / d`` with ``d >= 1`` and
``gcd(a, b, d) == 1``; the rational real and imaginary parts surface as
plain :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

Rational = Fraction

ScalarLike = Union[int, Fraction, "GaussianRational"]

_RATIONAL_RE = _re.compile(r"-?\d+(?:/\d+)?")


def _triple(re_part: int | Fraction, im_part: int | Fraction) -> tuple[int, int, int]:
    re_part = Fraction(re_part)
    im_part = Fraction(im_part)
    d = re_part.denominator * im_part.denominator // gcd(
        re_part.denominator, im_part.denominator
    )
    return (
        re_part.numerator * (d // re_part.denominator),
        im_part.numerator * (d // im_part.denominator),
        d,
    )


class GaussianRational:
    """An element a + b*i of Q(i) in canonical reduced form."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        a, b, d = _triple(re, im)
        g = gcd(gcd(a, b), d)
        self._a = a // g
        self._b = b // g
        self._d = d // g

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        """Wrap an already-reduced triple without normalizing."""
        obj = object.__new__(cls)
        obj._a = a
        obj._b = b
        obj._d = d
        return obj

    @classmethod
    def _reduced(cls, a: int, b: int, d: int) -> "GaussianRational":
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g > 1:
            a, b, d = a // g, b // g, d // g
        obj = object.__new__(cls)
        obj._a = a
        obj._b = b
        obj._d = d
        return obj

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def triple(self) -> tuple[int, int, int]:
        """The reduced internal triple (a, b, d) with value (a + b*i)/d."""
        return (self._a, self._b, self._d)

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """The field norm re^2 + im^2 (a nonnegative rational)."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def inverse(self) -> "GaussianRational":
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational._reduced(self._a * self._d, -self._b * self._d, n)

    @staticmethod
    def _coerce(value: ScalarLike) -> "GaussianRational | None":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, int):
            return GaussianRational._raw(value, 0, 1)
        if isinstance(value, Fraction):
            return GaussianRational._raw(value.numerator, 0, value.denominator)
        return None

    def __add__(self, other: ScalarLike) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._reduced(
            self._a * o._d + o._a * self._d,
            self._b * o._d + o._b * self._d,
            self._d * o._d,
        )

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._reduced(
            self._a * o._d - o._a * self._d,
            self._b * o._d - o._b * self._d,
            self._d * o._d,
        )

    def __rsub__(self, other: ScalarLike) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: ScalarLike) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._reduced(
            self._a * o._a - self._b * o._b,
            self._a * o._b + self._b * o._a,
            self._d * o._d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: ScalarLike) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self) -> "GaussianRational":
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __pos__(self) -> "GaussianRational":
        return self

    def __pow__(self, exponent: int) -> "GaussianRational":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return (
                self._a == other._a and self._b == other._b and self._d == other._d
            )
        if isinstance(other, int):
            return self._d == 1 and self._b == 0 and self._a == other
        if isinstance(other, Fraction):
            return self._b == 0 and Fraction(self._a, self._d) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._a, self._b, self._d))

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        if self._b == 0:
            return format_rational(self.re)
        if self._a == 0:
            return f"{format_rational(self.im)}i"
        sign = "+" if self._b > 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"

    def sort_key(self) -> tuple[Fraction, Fraction]:
        """Deterministic lexicographic key (re, im)."""
        return (self.re, self.im)


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)
I = GaussianRational._raw(0, 1, 1)


def _sqrt_fraction(q: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None if it is not a square."""
    if q < 0:
        return None
    rn = isqrt(q.numerator)
    rd = isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        return None
    return Fraction(rn, rd)


def sqrt_if_square(value: ScalarLike) -> GaussianRational | None:
    """Exact square root in Q(i), or None when no root exists in the field.

    The returned root obeys a deterministic sign convention: re > 0, or
    re == 0 and im >= 0. Solving x^2 - y^2 = re, 2xy = im reduces to the
    rational square test on the field norm.
    """
    z = GaussianRational._coerce(value)
    if z is None:
        raise TypeError(f"not a scalar: {value!r}")
    if not z:
        return ZERO
    r = _sqrt_fraction(z.norm())
    if r is None:
        return None
    x = _sqrt_fraction((z.re + r) / 2)
    if x is None:
        return None
    if x == 0:
        # purely imaginary input with nonpositive real part: root is y*i
        y = _sqrt_fraction(-z.re)
        if y is None:
            return None
        root = GaussianRational(0, y)
    else:
        root = GaussianRational(x, z.im / (2 * x))
    if root * root != z:
        return None
    return root


def parse_rational(text: str) -> Fraction:
    """Parse the scalar grammar: ['-'] digits ['/' digits]."""
    if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"malformed rational: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(q: Fraction) -> str:
    """Render a rational in the scalar grammar (lowest terms)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
