#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_continued_fractions
------------------------

Tests for `lagrange_spectra.continued_fractions` module.
"""

from fractions import Fraction
from itertools import product
import random
import unittest

from lagrange_spectra.continued_fractions import PeriodicSeq, Word, \
    cf_value, convergents, cylinder_interval, cylinder_length, \
    distortion_ratio, exp_threshold, f_at_shift, f_window_range, \
    inverse_length, max_f_bound, parse_word, periodic_value, scale_index, \
    tail_hull
from lagrange_spectra.quadratic import QuadraticValue

GOLDEN = QuadraticValue(-1, 1, 2, 5)


class TestWords(unittest.TestCase):

    def test_validation(self):
        with self.assertRaises(ValueError):
            Word(())
        with self.assertRaises(ValueError):
            Word((0, 1))
        with self.assertRaises(ValueError):
            Word((1, 3), N=2)

    def test_parse(self):
        w = parse_word("1, 2 2", 2)
        self.assertEqual(w, (1, 2, 2))
        self.assertEqual(w.N, 2)
        self.assertEqual(w.reversed(), (2, 2, 1))
        self.assertEqual(parse_word("3,1").alphabet_bound, 3)


class TestContinuants(unittest.TestCase):

    def test_single_symbols(self):
        self.assertEqual(tuple(convergents((1,))), (1, 1, 0, 1))
        self.assertEqual(tuple(convergents((2,))), (1, 2, 0, 1))

    def test_fibonacci(self):
        self.assertEqual(convergents((1, 1, 1, 1, 1)).q, 8)

    def test_identities(self):
        for n in range(1, 5):
            for w in product((1, 2, 3), repeat=n):
                c = convergents(w)
                self.assertEqual(abs(c.p * c.q_prev - c.p_prev * c.q), 1)
                self.assertGreaterEqual(c.q, c.q_prev)
                self.assertEqual(c.q, convergents(w[::-1]).q)

    def test_identities_on_long_words(self):
        rng = random.Random(1729)
        for _ in range(200):
            n = rng.randint(2, 60)
            w = tuple(rng.randint(1, 4) for _ in range(n))
            c = convergents(w)
            self.assertEqual(c.p * c.q_prev - c.p_prev * c.q, (-1) ** (n + 1))
            self.assertEqual(c.q, convergents(w[::-1]).q)
            self.assertEqual(c.p, convergents(w[1:]).q)
            value = Fraction(0)
            for a in reversed(w):
                value = 1 / (a + value)
            self.assertEqual(Fraction(c.p, c.q), value)

    def test_inverse_length(self):
        self.assertEqual(inverse_length(()), 1)
        self.assertEqual(inverse_length((1, 1, 1, 1, 1)), 104)


class TestCylinders(unittest.TestCase):

    def test_one_symbol(self):
        c = cylinder_interval((1,))
        self.assertEqual((c.lo, c.hi, c.length),
                         (Fraction(1, 2), Fraction(1), Fraction(1, 2)))
        c = cylinder_interval((2,))
        self.assertEqual((c.lo, c.hi, c.length),
                         (Fraction(1, 3), Fraction(1, 2), Fraction(1, 6)))

    def test_two_symbols(self):
        c = cylinder_interval((1, 2))
        self.assertEqual(c.as_interval().lo, Fraction(2, 3))
        self.assertEqual(c.as_interval().hi, Fraction(3, 4))
        self.assertEqual(c.length, c.hi - c.lo)
        self.assertEqual(cylinder_length((1, 2)), Fraction(1, 12))

    def test_nesting(self):
        for w in product((1, 2, 3), repeat=3):
            outer = cylinder_interval(w[:2]).as_interval()
            self.assertTrue(outer.contains(cylinder_interval(w).as_interval()))

    def test_distortion_bounds(self):
        words = [w for n in range(1, 4) for w in product((1, 2, 3), repeat=n)]
        for alpha in words:
            for beta in words:
                ratio = distortion_ratio(alpha, beta)
                self.assertTrue(Fraction(1, 8) <= ratio <= 4,
                                "%s %s %s" % (alpha, beta, ratio))

    def test_geometric_bounds(self):
        # lambda_1 = (N + 1)^-2 with N = 3, lambda_2 = golden^-2
        shrink = GOLDEN * GOLDEN
        for n in range(1, 6):
            upper = QuadraticValue(1)
            for _ in range(n - 1):
                upper = upper * shrink
            lower = Fraction(1, 2) * Fraction(1, 16) ** n
            for w in product((1, 2, 3), repeat=n):
                length = cylinder_length(w)
                self.assertTrue(lower <= length, w)
                self.assertTrue(upper >= length, w)


class TestScales(unittest.TestCase):

    def test_exp_threshold(self):
        self.assertEqual(exp_threshold(0), 1)
        self.assertEqual(exp_threshold(1), 3)
        self.assertEqual(exp_threshold(2), 8)
        self.assertEqual(exp_threshold(10), 22027)
        with self.assertRaises(ValueError):
            exp_threshold(-1)

    def test_scale_index(self):
        self.assertEqual(scale_index((1,)), 0)
        self.assertEqual(scale_index((2,)), 1)
        self.assertEqual(scale_index((1, 1, 1, 1, 1)), 4)


class TestPeriodicValues(unittest.TestCase):

    def test_fixed_points(self):
        self.assertEqual(periodic_value((), (1,)), GOLDEN)
        self.assertEqual(periodic_value((), (2,)), QuadraticValue(-1, 1, 1, 2))

    def test_preperiod(self):
        self.assertEqual(periodic_value((1,), (1,)), GOLDEN)
        self.assertEqual(periodic_value((2,), (1,)), 1 / (2 + GOLDEN))

    def test_cf_value(self):
        s = PeriodicSeq((), (2, 2, 1, 1))
        tol = Fraction(1, 10 ** 12)
        certified = cf_value(s, tol)
        self.assertEqual(certified.value, QuadraticValue(-9, 1, 14, 221))
        self.assertLessEqual(certified.width, tol)
        self.assertTrue(certified.enclosure.contains(certified.value))
        golden = cf_value(PeriodicSeq((), (1,)), Fraction(1, 3))
        self.assertEqual(golden.value, GOLDEN)
        self.assertLessEqual(golden.width, Fraction(1, 3))
        with self.assertRaises(ValueError):
            cf_value(s, 0)

    def test_sequence_helpers(self):
        s = PeriodicSeq((1, 2), (1, 2, 2), N=2)
        self.assertFalse(s.is_purely_periodic)
        self.assertEqual(s.tail(), PeriodicSeq((), (1, 2, 2)))
        self.assertEqual(s.tail().rotated(1).period, (2, 2, 1))
        self.assertEqual(len(set([s.tail(), PeriodicSeq((), (1, 2, 2))])), 1)
        with self.assertRaises(ValueError):
            PeriodicSeq((), (3,), N=2)

    def test_f_at_shift(self):
        self.assertEqual(f_at_shift((1,), 0), QuadraticValue.sqrt(5))
        self.assertEqual(f_at_shift((2,), 0), QuadraticValue.sqrt(8))
        self.assertEqual(f_at_shift((2, 2, 1, 1), 1),
                         QuadraticValue.sqrt(Fraction(221, 25)))
        self.assertEqual(f_at_shift((2, 2, 1, 1), 1),
                         f_at_shift((2, 2, 1, 1), 0))

    def test_max_f_bound(self):
        self.assertEqual(max_f_bound(4), QuadraticValue.sqrt(32))
        self.assertEqual(max_f_bound(4), f_at_shift((1, 4), 1))


class TestWindowRanges(unittest.TestCase):

    def test_tail_hull_is_invariant(self):
        for N in (1, 2, 3, 4):
            lo, hi = tail_hull(N)
            for b in range(1, N + 1):
                self.assertGreaterEqual(1 / (b + hi), lo)
                self.assertLessEqual(1 / (b + lo), hi)
            self.assertLessEqual(lo, periodic_value((), (N, 1)))
            self.assertGreaterEqual(hi, periodic_value((), (1, N)))
        self.assertEqual(tail_hull(None), (0, 1))

    def test_tail_hull_separates_first_symbols(self):
        # bare cylinders of consecutive symbols share an endpoint
        for N in (2, 3, 4):
            lo, hi = tail_hull(N)
            images = [(1 / (b + hi), 1 / (b + lo)) for b in range(1, N + 1)]
            for (low, _), (_, high) in zip(images, images[1:]):
                self.assertGreater(low - high, 0)

    def test_tail_hull_separates_two_symbol_words(self):
        lo, hi = tail_hull(3)
        hulls = []
        for w in product((1, 2, 3), repeat=2):
            ends = []
            for x in (lo, hi):
                for a in reversed(w):
                    x = 1 / (a + x)
                ends.append(x)
            hulls.append((min(ends), max(ends)))
        hulls.sort()
        for (_, high), (low, _) in zip(hulls, hulls[1:]):
            self.assertGreater(low, high)

    def test_contains_periodic_value(self):
        window = f_window_range((1, 2, 2, 1, 1, 2, 2), pos=2, N=2)
        self.assertIn(QuadraticValue.sqrt(Fraction(221, 25)), window)
        self.assertIn(f_at_shift((2, 2, 1, 1), 1), window)

    def test_longer_windows_refine(self):
        coarse = f_window_range((2, 2, 1, 1), 1, 2)
        fine = f_window_range((1, 2, 2, 1, 1, 2, 2), 2, 2)
        self.assertTrue(coarse.contains(fine))
        self.assertLess(fine.width, coarse.width)

    def test_windows_shrink_geometrically(self):
        rng = random.Random(7)
        for N in (2, 3, 4):
            for _ in range(40):
                w = tuple(rng.randint(1, N) for _ in range(9))
                for half in range(1, 4):
                    coarse = f_window_range(w[4 - half:5 + half], half, N)
                    fine = f_window_range(w[3 - half:6 + half], half + 1, N)
                    self.assertTrue(coarse.contains(fine))
                    self.assertLessEqual(fine.width, coarse.width * 7 / 10)

    def test_alphabet_bound_from_word(self):
        self.assertEqual(f_window_range(Word((1, 1, 1), N=3)),
                         f_window_range((1, 1, 1), N=3))

    def test_bad_position(self):
        with self.assertRaises(ValueError):
            f_window_range((1, 2, 1), pos=3)
        with self.assertRaises(ValueError):
            f_window_range(())


if __name__ == '__main__':
    import sys
    sys.exit(unittest.main())
