#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
lagrange_spectra.quadratic
--------------------------

Exact arithmetic in real quadratic fields. A ``QuadraticValue`` stores
(a + b*sqrt(d))/c in a normal form (c > 0, d square-free, gcd(a, b, c) = 1)
so two values are equal exactly when their fields are equal.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import mpmath
from sympy import factorint

from lagrange_spectra.intervals import Interval, to_fraction


@lru_cache(maxsize=4096)
def square_free_split(n):
    """Return (s, m) with n = s*s*m and m square-free."""
    if n < 1:
        raise ValueError("Expected a positive integer, got %s" % n)
    s, m = 1, 1
    for prime, power in factorint(n).items():
        s *= prime ** (power // 2)
        if power % 2:
            m *= prime
    return s, m


def _sign_of(a, b, d):
    """Sign of a + b*sqrt(d) with d >= 1 square-free."""
    if b == 0 or d == 1:
        total = a + b if d == 1 else a
        return (total > 0) - (total < 0)
    if a >= 0 and b >= 0:
        return 1 if (a or b) else 0
    if a <= 0 and b <= 0:
        return -1
    diff = a * a - b * b * d
    if a > 0:
        return (diff > 0) - (diff < 0)
    return (diff < 0) - (diff > 0)


class QuadraticValue(object):
    """The real number (a + b*sqrt(d))/c, kept in normal form."""

    __slots__ = ('a', 'b', 'c', 'd')

    def __init__(self, a, b=0, c=1, d=1):
        if c == 0:
            raise ZeroDivisionError("Zero denominator")
        if d < 0:
            raise ValueError("Only real quadratic values are supported")
        if d == 0 or b == 0:
            b, d = 0, 1
        s, d = square_free_split(d)
        b *= s
        if d == 1:
            a, b = a + b, 0
        if b == 0:
            d = 1
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        self.a = a // g
        self.b = b // g
        self.c = c // g
        self.d = d

    @classmethod
    def rational(cls, x):
        x = to_fraction(x)
        return cls(x.numerator, 0, x.denominator, 1)

    @classmethod
    def sqrt(cls, x):
        """Square root of a non-negative rational p/q, as sqrt(p*q)/q."""
        x = to_fraction(x)
        if x < 0:
            raise ValueError("Square root of a negative number")
        return cls(0, 1, x.denominator, x.numerator * x.denominator)

    @property
    def is_rational(self):
        return self.b == 0

    def as_fraction(self):
        if not self.is_rational:
            raise ValueError("%s is irrational" % self)
        return Fraction(self.a, self.c)

    @staticmethod
    def _coerce(other):
        if isinstance(other, QuadraticValue):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticValue.rational(other)
        return None

    def _field_with(self, other):
        if self.b == 0:
            return other.d
        if other.b == 0 or other.d == self.d:
            return self.d
        raise ValueError("Values %s and %s lie in different quadratic fields"
                         % (self, other))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self._field_with(other)
        return QuadraticValue(self.a * other.c + other.a * self.c,
                              self.b * other.c + other.b * self.c,
                              self.c * other.c, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticValue(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self._field_with(other)
        return QuadraticValue(self.a * other.a + self.b * other.b * d,
                              self.a * other.b + self.b * other.a,
                              self.c * other.c, d)

    __rmul__ = __mul__

    def reciprocal(self):
        # c / (a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("Reciprocal of zero")
        return QuadraticValue(self.c * self.a, -self.c * self.b, norm,
                              self.d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.reciprocal()

    # -- comparison ---------------------------------------------------------

    def _compare(self, other):
        """Sign of self - other, exact when both share a field."""
        if self.b == 0 or other.b == 0 or self.d == other.d:
            diff = self - other
            return _sign_of(diff.a, diff.b, diff.d)
        # distinct irrational fields never produce equal values
        tol = Fraction(1, 2 ** 20)
        while True:
            mine, theirs = self.enclosure(tol), other.enclosure(tol)
            if mine.hi < theirs.lo:
                return -1
            if theirs.hi < mine.lo:
                return 1
            tol /= 2 ** 16

    def _cmp_or_none(self, other):
        other = self._coerce(other)
        if other is None:
            return None
        return self._compare(other)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == \
            (other.a, other.b, other.c, other.d)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __lt__(self, other):
        s = self._cmp_or_none(other)
        return NotImplemented if s is None else s < 0

    def __le__(self, other):
        s = self._cmp_or_none(other)
        return NotImplemented if s is None else s <= 0

    def __gt__(self, other):
        s = self._cmp_or_none(other)
        return NotImplemented if s is None else s > 0

    def __ge__(self, other):
        s = self._cmp_or_none(other)
        return NotImplemented if s is None else s >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    # -- enclosures and rendering -------------------------------------------

    def enclosure(self, tol):
        """A rational interval of width <= tol containing the value."""
        tol = to_fraction(tol)
        if tol <= 0:
            raise ValueError("Tolerance must be positive, got %s" % tol)
        if self.b == 0:
            return Interval.point(Fraction(self.a, self.c))
        scale = 1
        while Fraction(1, self.c * scale) > tol:
            scale *= 2
        root = isqrt(self.b * self.b * self.d * scale * scale)
        if self.b > 0:
            lo, hi = root, root + 1
        else:
            lo, hi = -root - 1, -root
        return Interval(Fraction(self.a * scale + lo, self.c * scale),
                        Fraction(self.a * scale + hi, self.c * scale))

    def __float__(self):
        return float(self.enclosure(Fraction(1, 2 ** 64)).midpoint)

    def decimal(self, digits=60):
        """Decimal expansion to ``digits`` significant digits."""
        with mpmath.workdps(digits + 10):
            x = (mpmath.mpf(self.a) +
                 mpmath.mpf(self.b) * mpmath.sqrt(self.d)) / self.c
            return mpmath.nstr(x, digits, strip_zeros=False)

    def __str__(self):
        if self.b == 0:
            return str(Fraction(self.a, self.c))
        if self.b == 1:
            root = "sqrt(%d)" % self.d
        elif self.b == -1:
            root = "-sqrt(%d)" % self.d
        else:
            root = "%d*sqrt(%d)" % (self.b, self.d)
        if self.a:
            num = "%d%s%s" % (self.a, "+" if self.b > 0 else "", root)
            num = "(%s)" % num if self.c != 1 else num
        else:
            num = root
        return num if self.c == 1 else "%s/%d" % (num, self.c)

    def __repr__(self):
        return "QuadraticValue(%d, %d, %d, %d)" % (self.a, self.b, self.c,
                                                    self.d)
