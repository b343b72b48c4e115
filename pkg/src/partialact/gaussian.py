"""Gaussian rationals a + bi with exact Fraction parts, and moduli.

A modulus is exact when |z|^2 is the square of a rational.  Otherwise it is
enclosed between outward-rounded dyadic bounds, and sums or maxima of moduli
carry those bounds along as a :class:`Bounded` value.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import MalformedInput
from .groups import format_fraction, parse_fraction

_NUM = r"[+-]?\d+(?:/\d+)?"
_COMPLEX = re.compile(rf"^(?P<re>{_NUM})?(?:(?P<im>[+-](?:\d+(?:/\d+)?)?)i)?$")
_PURE_IM = re.compile(rf"^(?P<im>{_NUM}|[+-])?i$")

DEFAULT_BITS = 64


@dataclass(frozen=True)
class GQ:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def coerce(v) -> "GQ":
        if isinstance(v, GQ):
            return v
        if isinstance(v, (int, Fraction)):
            return GQ(v)
        if isinstance(v, str):
            return GQ.parse(v)
        if isinstance(v, complex):
            raise MalformedInput("floating complex values are not exact")
        raise MalformedInput(f"not a Gaussian rational: {v!r}")

    @staticmethod
    def parse(text: str) -> "GQ":
        s = text.replace(" ", "")
        m = _PURE_IM.match(s)
        if m:
            im = m.group("im")
            return GQ(0, -1 if im == "-" else 1 if im in (None, "+")
                      else parse_fraction(im))
        m = _COMPLEX.match(s)
        if not s or not m or (m.group("re") is None and m.group("im") is None):
            raise MalformedInput(f"bad complex literal {text!r}")
        re_part = parse_fraction(m.group("re")) if m.group("re") else 0
        im = m.group("im")
        if im is None:
            im_part = 0
        elif im in "+-":
            im_part = -1 if im == "-" else 1
        else:
            im_part = parse_fraction(im)
        return GQ(re_part, im_part)

    def __str__(self):
        if self.im == 0:
            return format_fraction(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{format_fraction(self.re)}{sign}{format_fraction(abs(self.im))}i"

    def __repr__(self):
        return f"GQ({self})"

    def __add__(self, other):
        o = GQ.coerce(other)
        return GQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GQ(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GQ.coerce(other))

    def __mul__(self, other):
        o = GQ.coerce(other)
        return GQ(self.re * o.re - self.im * o.im,
                  self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self):
        return GQ(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


ZERO = GQ()
ONE = GQ(1)


def _sqrt_rational(q: Fraction):
    """Exact square root of a non-negative rational, or None."""
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class Bounded:
    """A real number known to lie in [lo, hi]."""

    lo: Fraction
    hi: Fraction
    bits: int = DEFAULT_BITS

    @property
    def exact(self):
        return self.lo == self.hi

    def __add__(self, other):
        o = as_bounded(other, self.bits)
        return Bounded(self.lo + o.lo, self.hi + o.hi, self.bits)

    __radd__ = __add__

    def __mul__(self, other):
        o = as_bounded(other, self.bits)
        prods = [a * b for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        return Bounded(min(prods), max(prods), self.bits)

    __rmul__ = __mul__

    def __str__(self):
        if self.exact:
            return format_fraction(self.lo)
        return f"[{format_fraction(self.lo)}, {format_fraction(self.hi)}]"

    def to_json(self):
        if self.exact:
            return format_fraction(self.lo)
        return {"lower": format_fraction(self.lo),
                "upper": format_fraction(self.hi),
                "rounding": f"outward, 2^-{self.bits}"}

    def settle(self):
        return self.lo if self.exact else self


def as_bounded(v, bits=DEFAULT_BITS) -> Bounded:
    if isinstance(v, Bounded):
        return v
    v = Fraction(v)
    return Bounded(v, v, bits)


def modulus(z, bits: int = DEFAULT_BITS) -> Bounded:
    q = GQ.coerce(z).abs2()
    root = _sqrt_rational(q)
    if root is not None:
        return Bounded(root, root, bits)
    scale = 1 << bits
    # floor(sqrt(q) * 2^bits) from integer square roots
    lo = isqrt(q.numerator * scale * scale // q.denominator)
    return Bounded(Fraction(lo, scale), Fraction(lo + 1, scale), bits)


def bmax(values, bits=DEFAULT_BITS) -> Bounded:
    vals = [as_bounded(v, bits) for v in values]
    if not vals:
        return as_bounded(0, bits)
    return Bounded(max(v.lo for v in vals), max(v.hi for v in vals), bits)


def bsum(values, bits=DEFAULT_BITS) -> Bounded:
    total = as_bounded(0, bits)
    for v in values:
        total = total + v
    return total


def certainly_greater(a, b) -> bool:
    """True when a > b holds for every value inside the enclosures."""
    return as_bounded(a).lo > as_bounded(b).hi
