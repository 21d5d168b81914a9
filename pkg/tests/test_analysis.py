#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_analysis
-------------

Tests for `lagrange_spectra.analysis` module.
"""

from fractions import Fraction
from itertools import product
import unittest
from unittest import mock

from lagrange_spectra.analysis import F_LIKE, INDETERMINATE, J_LIKE, \
    JTILDE_LIKE, D_of_t, FamilyStage, Resolution, classify_point, \
    component_dimension, connect_check, connects_with_ones, d_curve, \
    dimension_range, eta_minus, eta_plus, fixed_component, geometric_gaps, \
    increasing_family, parse_grid, theta_generate
from lagrange_spectra.dimension import DimensionEstimate, PRESSURE
from lagrange_spectra.exceptions import ConnectionNotFound, \
    NotStronglyConnected
from lagrange_spectra.intervals import Interval
from lagrange_spectra.spectra import max_f_over_component
from lagrange_spectra.subshift import OUTER, SubshiftAutomaton, \
    build_full_shift, prune_sublevel, scc_decompose

SMALL = Resolution(N=2, window=2)
LADDER = [(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2)]


def assert_consistent_label(case, result):
    if result.label in (J_LIKE, F_LIKE):
        case.assertTrue(all(row['meets'] for row in result.per_eps))
        case.assertFalse(any(row['misses'] for row in result.per_eps))
    if result.label == F_LIKE:
        case.assertTrue(any(row['left_gap'] for row in result.per_eps))


class TestDCurve(unittest.TestCase):

    def test_parse_grid(self):
        self.assertEqual(parse_grid("3.0:3.2:0.1"),
                         [Fraction(3), Fraction(31, 10), Fraction(16, 5)])
        for bad in ("3.0:3.2", "3:2:0", "a:b:c"):
            with self.assertRaises(ValueError):
                parse_grid(bad)

    def test_zero_below_three(self):
        point = D_of_t("2.9", Resolution(N=2, window=3))
        self.assertEqual((point.dLo, point.dHi), (0.0, 0.0))
        self.assertEqual((point.lLo, point.lHi), (0.0, 0.0))

    def test_bracket_and_l_column(self):
        point = D_of_t(5, SMALL)
        self.assertLessEqual(point.dLo, point.dHi)
        self.assertAlmostEqual(point.dHi, 0.5313, delta=0.03)
        self.assertEqual(point.lHi, 1.0)
        self.assertEqual((point.window, point.r_max), (2, SMALL.r_max))

    def test_dimension_range_takes_the_best_of_each_end(self):
        a = SubshiftAutomaton(2, 1, [(1, 1, 1), (2, 2, 2)])
        estimates = [DimensionEstimate.make(0.2, 0.9, PRESSURE),
                     DimensionEstimate.make(0.5, 0.6, PRESSURE)]
        with mock.patch('lagrange_spectra.analysis.component_dimension',
                        side_effect=estimates):
            self.assertEqual(dimension_range(a, SMALL), (0.5, 0.9))

    def test_dimension_range_without_subhorseshoes(self):
        a = SubshiftAutomaton(2, 1, [(1, 1, 2), (1, 2, 2)])
        self.assertEqual(dimension_range(a, SMALL), (0.0, 0.0))

    def test_warns_beyond_the_model(self):
        with self.assertLogs(level='WARNING'):
            D_of_t(4, Resolution(N=2, window=1))

    def test_curve_is_monotone(self):
        grid = parse_grid("2.9:3.7:0.1")
        curve = d_curve(grid, SMALL)
        self.assertEqual([p.t for p in curve], grid)
        for left, right in zip(curve, curve[1:]):
            self.assertLessEqual(left.dHi, right.dHi)
            self.assertLessEqual(left.dLo, right.dLo)
        for p in curve:
            self.assertLessEqual(p.dLo, p.dHi)

    def test_curve_ignores_threads(self):
        grid = parse_grid("3.0:3.4:0.1")
        threaded = Resolution(N=2, window=2, threads=3)
        self.assertEqual(d_curve(grid, SMALL), d_curve(grid, threaded))

    def test_unsorted_grid(self):
        with self.assertRaises(ValueError):
            d_curve([3, 2], SMALL)


class TestInverses(unittest.TestCase):

    def test_eta_minus(self):
        tol_t = Fraction(1, 20)
        low = eta_minus(0.3, tol_t, SMALL)
        high = eta_minus(0.4, tol_t, SMALL)
        for bracket, eta in ((low, 0.3), (high, 0.4)):
            self.assertLess(bracket.d_a.dHi, eta)
            self.assertLessEqual(eta, bracket.d_b.dHi)
            self.assertLessEqual(bracket.t_b - bracket.t_a, tol_t)
            self.assertFalse(bracket.degenerate)
        self.assertLess(low.t_a, high.t_b)

    def test_eta_zero_is_degenerate(self):
        bracket = eta_minus(0, Fraction(1, 20), SMALL)
        self.assertTrue(bracket.degenerate)
        self.assertEqual(bracket.t_a, bracket.t_b)

    def test_unreachable_eta(self):
        with self.assertRaises(ValueError):
            eta_minus(0.9, Fraction(1, 20), SMALL)
        with self.assertRaises(ValueError):
            eta_minus(-0.1, Fraction(1, 20), SMALL)

    def test_eta_plus(self):
        tol_t = Fraction(1, 20)
        bracket = eta_plus(0.3, tol_t, SMALL)
        self.assertFalse(bracket.degenerate)
        self.assertLessEqual(bracket.d_a.dLo, 0.3)
        self.assertLess(0.3, bracket.d_b.dLo)
        self.assertLessEqual(bracket.t_b - bracket.t_a, tol_t)
        self.assertLessEqual(eta_minus(0.3, tol_t, SMALL).t_a, bracket.t_b)


class TestConnections(unittest.TestCase):

    def setUp(self):
        self.a = build_full_shift(2, 2)
        self.t = Fraction(3)
        self.components = scc_decompose(
            prune_sublevel(self.a, self.t, OUTER)).subhorseshoes

    def verdicts(self, eps):
        n = len(self.components)
        return dict(((i, j), connect_check(self.a, self.components[i],
                                           self.components[j], self.t, eps))
                    for i in range(n) for j in range(n))

    def test_symmetric_transitive_monotone(self):
        narrow = self.verdicts(Fraction(1, 10))
        wide = self.verdicts(Fraction(3, 5))
        n = len(self.components)
        for i, j in product(range(n), repeat=2):
            self.assertEqual(narrow[i, j].connected, narrow[j, i].connected)
            if narrow[i, j].connected:
                self.assertTrue(wide[i, j].connected)
            for k in range(n):
                if narrow[i, j].connected and narrow[j, k].connected:
                    self.assertTrue(narrow[i, k].connected)
        for i in range(n):
            self.assertTrue(narrow[i, i].connected)

    def test_witness_paths(self):
        for verdict in self.verdicts(Fraction(3, 5)).values():
            if not verdict.connected or not verdict.forward:
                continue
            self.assertTrue(set(verdict.enclosing) >= set(verdict.forward))
            self.assertTrue(set(verdict.enclosing) >= set(verdict.backward))

    def test_component_must_survive(self):
        with self.assertRaises(ValueError):
            connect_check(self.a, [(2, 2, 2, 2, 2)], [(1, 1, 1, 1, 1)],
                          Fraction(5, 2), Fraction(1, 10))

    def test_transient_component_is_rejected(self):
        ladder = SubshiftAutomaton(2, 1, LADDER)
        with self.assertRaises(NotStronglyConnected):
            connect_check(ladder, [(1, 1, 2)], [(1, 1, 2)], 4,
                          Fraction(1, 10))
        with self.assertRaises(ValueError):
            connect_check(ladder, [(1, 1, 1)], [(1, 2, 2)], 4,
                          Fraction(1, 10))

    def test_connects_with_ones(self):
        ones = fixed_component(prune_sublevel(self.a, self.t, OUTER), 1)
        self.assertEqual(ones, [(1, 1, 1, 1, 1)])
        report = dict(connects_with_ones(self.a, self.t, Fraction(1, 10)))
        index = [i for i, comp in enumerate(self.components)
                 if (1, 1, 1, 1, 1) in comp][0]
        self.assertTrue(report[index])


def _full_shift_stage(a):
    states = list(a.states)
    return FamilyStage(Fraction(3), Fraction(4), states,
                       DimensionEstimate.make(0.5, 0.55, PRESSURE),
                       max_f_over_component(a, states), True)


class TestFamilies(unittest.TestCase):

    def test_geometric_gaps(self):
        self.assertEqual(geometric_gaps(3), [4, 8, 16])
        self.assertEqual(geometric_gaps(2, first=8), [8, 16])

    def test_increasing_family(self):
        family = increasing_family(0.3, Fraction(1, 5), 2, SMALL)
        for before, after in zip(family.stages, family.stages[1:]):
            self.assertEqual(before.t_next, after.t_n)
            self.assertGreater(after.dim.lo, before.dim.hi)
            self.assertTrue(set(before.component) <= set(after.component))
        for stage in family.stages:
            self.assertLess(stage.t_n, stage.t_next)
            self.assertGreater(stage.maxF.lo, stage.t_n)
            self.assertLess(stage.maxF.hi, stage.t_next)
        if not all(stage.dimension_bullet for stage in family.stages):
            self.assertIsNotNone(family.diagnostic)
        if len(family.stages) < 2:
            self.assertIsNotNone(family.diagnostic)
        else:
            self.assertEqual(family.union, family.stages[-1].component)

    def test_bad_stage_count(self):
        with self.assertRaises(ValueError):
            increasing_family(0.3, Fraction(1, 5), 0, SMALL)

    def test_theta_lands_in_the_last_stage(self):
        a = build_full_shift(2, 1)
        stage = _full_shift_stage(a)
        result = theta_generate(a, [(1, 1, 1)], [stage], 2, geometric_gaps(2))
        target = stage.maxF.widen(result.window_error)
        self.assertTrue(target.contains(result.estimate))
        self.assertEqual(result.target, stage.maxF)
        self.assertGreater(len(result.word), sum(geometric_gaps(2)))

    def test_theta_target_follows_the_last_generated_stage(self):
        a = build_full_shift(2, 1)
        stage = _full_shift_stage(a)
        first = stage._replace(maxF=Interval(Fraction(3), Fraction(31, 10)))
        result = theta_generate(a, [(1, 1, 1)], [first, stage], 1, [4])
        self.assertEqual(result.target, first.maxF)
        result = theta_generate(a, [(1, 1, 1)], [first, stage], 2, [4, 8])
        self.assertEqual(result.target, stage.maxF)

    def test_theta_stable_under_longer_gaps(self):
        a = build_full_shift(2, 1)
        stage = _full_shift_stage(a)
        short = theta_generate(a, [(1, 1, 1)], [stage], 2, geometric_gaps(2))
        longer = theta_generate(a, [(1, 1, 1)], [stage], 2,
                                geometric_gaps(2, first=8))
        self.assertEqual(short.estimate, longer.estimate)

    def test_theta_validation(self):
        a = build_full_shift(2, 1)
        stage = _full_shift_stage(a)
        with self.assertRaises(ValueError):
            theta_generate(a, [(1, 1, 1)], [], 2, [4, 8])
        with self.assertRaises(ValueError):
            theta_generate(a, [(1, 1, 1)], [stage], 2, [8, 4])

    def test_theta_needs_a_cycle(self):
        a = SubshiftAutomaton(2, 1, [(1, 1, 1), (1, 1, 2), (1, 2, 2),
                                     (2, 2, 2)])
        stage = FamilyStage(Fraction(3), Fraction(4), list(a.states),
                            DimensionEstimate.make(0, 0, PRESSURE),
                            max_f_over_component(a, [(2, 2, 2)]), False)
        with self.assertRaises(ConnectionNotFound):
            theta_generate(a, [(1, 1, 1)], [stage], 1, [4])


class TestClassification(unittest.TestCase):

    def test_dimension_zero(self):
        result = classify_point("2.9", [Fraction(1, 5)],
                                Resolution(N=2, window=3))
        self.assertTrue(result.dimension_zero)
        self.assertEqual(result.label, INDETERMINATE)
        self.assertEqual(result.per_eps, [])

    def test_isolated_spike_is_jtilde_like(self):
        # the fixed orbit of 4 sits alone near 4.45, far above {1,2}
        states = [(4, 4, 4)] + list(product((1, 2), repeat=3))
        a = SubshiftAutomaton(4, 1, states)
        resolution = Resolution(N=4, window=1)
        result = classify_point(Fraction(89, 20),
                                [Fraction(1, 5), Fraction(1, 10)],
                                resolution, automaton=a)
        self.assertFalse(result.dimension_zero)
        self.assertEqual(result.label, JTILDE_LIKE)
        self.assertTrue(result.per_eps[0]['misses'])
        assert_consistent_label(self, result)

    def test_labels_agree_with_their_rows(self):
        for t in ("3.2", "3.35", "3.6"):
            result = classify_point(t, [Fraction(1, 5), Fraction(1, 10)],
                                    SMALL)
            assert_consistent_label(self, result)

    def test_component_dimension_is_cached_by_states(self):
        a = build_full_shift(2, 1)
        first = component_dimension(a, a.states, SMALL)
        again = component_dimension(a, list(reversed(a.states)), SMALL)
        self.assertIs(first, again)

    def test_eps_grid_must_decrease(self):
        with self.assertRaises(ValueError):
            classify_point(3, [Fraction(1, 10), Fraction(1, 5)], SMALL)
        with self.assertRaises(ValueError):
            classify_point(3, [], SMALL)


if __name__ == '__main__':
    import sys
    sys.exit(unittest.main())
