#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
lagrange_spectra.intervals
--------------------------

Closed intervals with exact rational endpoints. Every certified bound in
the package travels as an ``Interval``.
"""

from fractions import Fraction


def to_fraction(x):
    """Exact rational from an int, Fraction, decimal string or float.

    Floats are read through their shortest repr, so ``2.9`` becomes
    ``29/10`` and not the nearest binary double.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class Interval(object):
    """The closed interval [lo, hi] with rational endpoints."""

    __slots__ = ('lo', 'hi')

    def __init__(self, lo, hi):
        lo = to_fraction(lo)
        hi = to_fraction(hi)
        if lo > hi:
            raise ValueError("Empty interval [%s, %s]" % (lo, hi))
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x):
        return cls(x, x)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def contains(self, x):
        """True when x (a number, QuadraticValue or Interval) lies inside."""
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x and x <= self.hi

    def __contains__(self, x):
        return self.contains(x)

    def overlaps(self, other):
        return self.lo <= other.hi and other.lo <= self.hi

    def is_below(self, x):
        """Certified ``every point < x``."""
        return self.hi < x

    def is_above(self, x):
        """Certified ``every point > x``."""
        return self.lo > x

    def hull(self, other):
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def widen(self, amount):
        amount = to_fraction(amount)
        return Interval(self.lo - amount, self.hi + amount)

    def __add__(self, other):
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        other = to_fraction(other)
        return Interval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return "Interval(%s, %s)" % (self.lo, self.hi)

    def as_floats(self):
        return float(self.lo), float(self.hi)

    @classmethod
    def hull_of(cls, intervals):
        intervals = list(intervals)
        if not intervals:
            raise ValueError("Hull of no intervals")
        return cls(min(i.lo for i in intervals), max(i.hi for i in intervals))
