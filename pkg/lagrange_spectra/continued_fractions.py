#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
lagrange_spectra.continued_fractions
------------------------------------

Exact continued-fraction arithmetic: words over a bounded alphabet,
continuants, cylinder intervals, values of eventually periodic expansions
and certified enclosures of f(x, y) = x + y over symbolic rectangles.

Conventions: the word (a_1, ..., a_n) stands for [0; a_1, ..., a_n, ...].
Convergents start from p_-1/q_-1 = 1/0 and p_0/q_0 = 0/1.
"""

import math
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache

import mpmath

from lagrange_spectra.intervals import Interval
from lagrange_spectra.quadratic import QuadraticValue


class Word(tuple):
    """A non-empty tuple of positive partial quotients.

    When ``N`` is given every symbol must lie in [1, N] and the bound is
    remembered as the word's alphabet.
    """

    def __new__(cls, symbols, N=None):
        symbols = tuple(int(s) for s in symbols)
        if not symbols:
            raise ValueError("A word must contain at least one symbol.")
        for s in symbols:
            if s < 1:
                raise ValueError("Symbols must be positive, got %s" % s)
            if N is not None and s > N:
                raise ValueError("Symbol %s exceeds the alphabet bound %s"
                                 % (s, N))
        self = super(Word, cls).__new__(cls, symbols)
        self.N = N
        return self

    @property
    def alphabet_bound(self):
        return self.N if self.N is not None else max(self)

    def reversed(self):
        return Word(self[::-1], self.N)

    def __repr__(self):
        return "Word(%s)" % ",".join(str(s) for s in self)


def parse_word(text, N=None):
    """Parse ``"1,2,2"`` (commas or whitespace) into a Word."""
    parts = text.replace(",", " ").split()
    return Word((int(p) for p in parts), N)


Continuants = namedtuple('Continuants', ['p', 'q', 'p_prev', 'q_prev'])


def _recurrence(symbols):
    p_prev, q_prev, p, q = 1, 0, 0, 1
    for a in symbols:
        p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
    return Continuants(p, q, p_prev, q_prev)


def convergents(w):
    """Continuants (p, q, p_prev, q_prev) of the word ``w``."""
    if not isinstance(w, Word):
        w = Word(w)
    return _recurrence(w)


def inverse_length(symbols):
    """1/|I(symbols)| = q(q + q_prev), an integer. The empty word gives 1."""
    c = _recurrence(symbols)
    return c.q * (c.q + c.q_prev)


class CylinderInterval(namedtuple('CylinderInterval',
                                  ['lo', 'hi', 'length', 'continuants'])):
    """The cylinder I(w) of numbers whose expansion starts with ``w``."""

    __slots__ = ()

    def as_interval(self):
        return Interval(self.lo, self.hi)


def cylinder_interval(w):
    c = convergents(w)
    a = Fraction(c.p, c.q)
    b = Fraction(c.p + c.p_prev, c.q + c.q_prev)
    return CylinderInterval(min(a, b), max(a, b),
                            Fraction(1, c.q * (c.q + c.q_prev)), c)


def cylinder_length(symbols):
    return Fraction(1, inverse_length(symbols))


@lru_cache(maxsize=None)
def exp_threshold(r):
    """Smallest integer M with M >= e**r.

    ``1/|I(w)|`` is an integer, so ``|I(w)| <= e**-r`` is the exact integer
    test ``inverse_length(w) >= exp_threshold(r)``.
    """
    if r < 0:
        raise ValueError("Scale index must be non-negative")
    if r == 0:
        return 1
    dps = int(r / 2.3) + 40
    while True:
        with mpmath.workdps(dps):
            value = mpmath.exp(r)
            floor = int(mpmath.floor(value))
            frac = value - floor
            if mpmath.mpf(10) ** -20 < frac < 1 - mpmath.mpf(10) ** -20:
                return floor + 1
        dps *= 2


def scale_index(w):
    """r(w) = floor(log(1/|I(w)|)), natural logarithm, decided exactly."""
    m = inverse_length(w)
    r = max(int(math.log(m)) - 1, 0)
    while exp_threshold(r + 1) <= m:
        r += 1
    while r > 0 and exp_threshold(r) > m:
        r -= 1
    return r


def distortion_ratio(alpha, beta):
    """|I(alpha beta)| / (|I(alpha)| |I(beta)|); lies in [1/8, 4]."""
    joined = tuple(alpha) + tuple(beta)
    return (cylinder_length(joined) /
            (cylinder_length(alpha) * cylinder_length(beta)))


class PeriodicSeq(object):
    """The eventually periodic sequence preperiod, period, period, ..."""

    def __init__(self, preperiod, period, N=None):
        self.preperiod = tuple(Word(preperiod, N)) if preperiod else ()
        self.period = period if isinstance(period, Word) and N is None \
            else Word(period, N)
        self.N = N

    @property
    def is_purely_periodic(self):
        return not self.preperiod

    def tail(self):
        return PeriodicSeq((), self.period, self.N)

    def rotated(self, k):
        k %= len(self.period)
        return PeriodicSeq((), self.period[k:] + self.period[:k], self.N)

    def __eq__(self, other):
        if not isinstance(other, PeriodicSeq):
            return NotImplemented
        return (self.preperiod, tuple(self.period)) == \
            (other.preperiod, tuple(other.period))

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.preperiod, tuple(self.period)))

    def __repr__(self):
        return "PeriodicSeq(%s, %s)" % (list(self.preperiod),
                                        list(self.period))


def _mobius(c, y):
    """(p + p_prev*y) / (q + q_prev*y) for continuants ``c``."""
    return (c.p + c.p_prev * y) / (c.q + c.q_prev * y)


@lru_cache(maxsize=65536)
def _purely_periodic_value(period):
    # y = [0; period, y] solves q_prev*y^2 + (q - p_prev)*y - p = 0
    c = _recurrence(period)
    b = c.q - c.p_prev
    return QuadraticValue(-b, 1, 2 * c.q_prev, b * b + 4 * c.p * c.q_prev)


def periodic_value(preperiod, period):
    """Exact value of [0; preperiod, period, period, ...]."""
    y = _purely_periodic_value(tuple(period))
    if not preperiod:
        return y
    return _mobius(_recurrence(preperiod), y)


class CertifiedValue(namedtuple('CertifiedValue', ['value', 'enclosure'])):
    """An exact QuadraticValue with a rational enclosure around it."""

    __slots__ = ()

    @property
    def width(self):
        return self.enclosure.width


def cf_value(s, tol):
    """Exact value of the expansion ``s`` and an enclosure of width at most
    ``tol``."""
    value = periodic_value(s.preperiod, s.period)
    return CertifiedValue(value, value.enclosure(tol))


def f_at_shift(period, i):
    """Exact f = a_0 + [0; a_1, ...] + [0; a_-1, ...] at position ``i`` of the
    bi-infinite repetition of ``period``."""
    period = tuple(period)
    k = len(period)
    i %= k
    forward = period[i + 1:] + period[:i + 1]
    backward = tuple(period[(i - 1 - j) % k] for j in range(k))
    return period[i] + periodic_value((), forward) + \
        periodic_value((), backward)


@lru_cache(maxsize=None)
def tail_hull(N=None):
    """A rational interval [L, U] containing every tail [0; b_1, b_2, ...]
    with b_j <= N and mapped into itself by each x -> 1/(b + x), b <= N.

    Without a bound the tails range over [0, 1].
    """
    if N is None:
        return Fraction(0), Fraction(1)
    u_min = periodic_value((), (N, 1)).enclosure(Fraction(1, 2 ** 80)).lo
    u_max = periodic_value((), (1, N)).enclosure(Fraction(1, 2 ** 80)).hi
    slack = Fraction(1, 2 ** 60)
    for _ in range(40):
        lo, hi = u_min - slack, u_max + slack
        if 1 / (N + hi) >= lo and 1 / (1 + lo) <= hi:
            return lo, hi
        slack *= 4
    return Fraction(1, N + 1), Fraction(1)


def _side_range(symbols, lo, hi):
    c = _recurrence(symbols)
    a = Fraction(c.p + c.p_prev * lo, c.q + c.q_prev * lo)
    b = Fraction(c.p + c.p_prev * hi, c.q + c.q_prev * hi)
    return min(a, b), max(a, b)


def f_window_range(center, pos=None, N=None):
    """Certified interval containing every f = a_0 + [0; a_1, ..., a_l, *]
    + [0; a_-1, ..., a_-l, *] over completions * with symbols <= N.

    ``pos`` marks a_0 (default: the middle of ``center``). ``N`` defaults to
    the word's alphabet bound.
    """
    bound = getattr(center, "N", None)
    center = tuple(center)
    if not center:
        raise ValueError("Empty window")
    if pos is None:
        pos = len(center) // 2
    if not 0 <= pos < len(center):
        raise ValueError("Marked position %s outside a word of length %s"
                         % (pos, len(center)))
    if N is None:
        N = bound or max(center)
    lo, hi = tail_hull(N)
    f_lo, f_hi = _side_range(center[pos + 1:], lo, hi)
    b_lo, b_hi = _side_range(center[:pos][::-1], lo, hi)
    return Interval(center[pos] + f_lo + b_lo, center[pos] + f_hi + b_hi)


def max_f_bound(N):
    """max f over the model with alphabet {1..N}: sqrt(N^2 + 4N)."""
    return QuadraticValue.sqrt(N * N + 4 * N)
