"""Closed rational intervals and complex rectangles.

Endpoints are Fractions, so all arithmetic is exact; there is no rounding
step anywhere. Enclosures only widen through genuine interval semantics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .qmath import sqrt_lower, sqrt_upper

Rat = Union[int, Fraction]


class Iv:
    """Closed interval [lo, hi] with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Rat, hi: Rat = None):
        if hi is None:
            hi = lo
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x: Rat) -> "Iv":
        return cls(x, x)

    def __repr__(self):
        return f"Iv({self.lo}, {self.hi})"

    def __eq__(self, other):
        return isinstance(other, Iv) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other):
        if isinstance(other, Iv):
            return Iv(self.lo + other.lo, self.hi + other.hi)
        return Iv(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self):
        return Iv(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Iv) else Iv(-Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Iv):
            other = Iv.point(Fraction(other))
        c = (self.lo * other.lo, self.lo * other.hi,
             self.hi * other.lo, self.hi * other.hi)
        return Iv(min(c), max(c))

    __rmul__ = __mul__

    def inverse(self) -> "Iv":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains 0")
        return Iv(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        if not isinstance(other, Iv):
            other = Iv.point(Fraction(other))
        return self * other.inverse()

    def contains(self, x) -> bool:
        if isinstance(x, Iv):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def strictly_contains(self, x: "Iv") -> bool:
        return self.lo < x.lo and x.hi < self.hi

    def intersect(self, other: "Iv") -> "Iv":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("disjoint intervals")
        return Iv(lo, hi)

    def overlaps(self, other: "Iv") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def sq(self) -> "Iv":
        if self.lo >= 0:
            return Iv(self.lo * self.lo, self.hi * self.hi)
        if self.hi <= 0:
            return Iv(self.hi * self.hi, self.lo * self.lo)
        return Iv(0, max(self.lo * self.lo, self.hi * self.hi))

    def abs(self) -> "Iv":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Iv(0, max(-self.lo, self.hi))

    def sqrt(self) -> "Iv":
        if self.lo < 0:
            raise ValueError("sqrt of interval with negative part")
        return Iv(sqrt_lower(self.lo), sqrt_upper(self.hi))

    def __pow__(self, k: int) -> "Iv":
        if k == 0:
            return Iv.point(1)
        if k < 0:
            return (self ** (-k)).inverse()
        out = self
        for _ in range(k - 1):
            out = out * self
        # even powers through repeated mul can overshoot below 0; tighten
        if k % 2 == 0 and out.lo < 0:
            out = Iv(0, out.hi)
        return out


class CIv:
    """Complex rectangle re + im*i with interval real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Iv, im: Iv):
        self.re = re
        self.im = im

    @classmethod
    def point(cls, re: Rat, im: Rat = 0) -> "CIv":
        return cls(Iv.point(re), Iv.point(im))

    def __repr__(self):
        return f"CIv({self.re}, {self.im})"

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def __add__(self, other):
        if isinstance(other, CIv):
            return CIv(self.re + other.re, self.im + other.im)
        return CIv(self.re + other, self.im)

    def __neg__(self):
        return CIv(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, CIv):
            return CIv(self.re - other.re, self.im - other.im)
        return CIv(self.re - other, self.im)

    def __mul__(self, other):
        if isinstance(other, CIv):
            return CIv(self.re * other.re - self.im * other.im,
                       self.re * other.im + self.im * other.re)
        return CIv(self.re * other, self.im * other)

    def conj(self) -> "CIv":
        return CIv(self.re, -self.im)

    def abs_sq(self) -> Iv:
        return self.re.sq() + self.im.sq()

    def inverse(self) -> "CIv":
        m = self.abs_sq()
        inv = m.inverse()
        return CIv(self.re * inv, (-self.im) * inv)

    def contains(self, other: "CIv") -> bool:
        return self.re.contains(other.re) and self.im.contains(other.im)

    def strictly_contains(self, other: "CIv") -> bool:
        return self.re.strictly_contains(other.re) and self.im.strictly_contains(other.im)

    def intersect(self, other: "CIv") -> "CIv":
        return CIv(self.re.intersect(other.re), self.im.intersect(other.im))
