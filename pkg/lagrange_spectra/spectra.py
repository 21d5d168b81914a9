#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
lagrange_spectra.spectra
------------------------

Markov and Lagrange values of periodic sequences, the Markov tree, and the
classical spectrum below 3.
"""

from collections import namedtuple
from fractions import Fraction
import heapq
from itertools import product
import logging

import networkx as nx

from lagrange_spectra.continued_fractions import PeriodicSeq, f_at_shift, \
    f_window_range
from lagrange_spectra.exceptions import BudgetExceeded, NotStronglyConnected
from lagrange_spectra.intervals import Interval
from lagrange_spectra.quadratic import QuadraticValue
from lagrange_spectra.subshift import has_cycle

DEFAULT_TOL = Fraction(1, 10 ** 12)

MARKOV = 'markov'
LAGRANGE = 'lagrange'

SpectrumPoint = namedtuple('SpectrumPoint',
                           ['value', 'witness', 'kind', 'enclosure'])


class MarkovTriple(namedtuple('MarkovTriple', ['x', 'y', 'z'])):
    """A solution x <= y <= z of x^2 + y^2 + z^2 = 3xyz."""

    __slots__ = ()

    def is_solution(self):
        x, y, z = self
        return x * x + y * y + z * z == 3 * x * y * z

    def spectrum_point(self):
        """sqrt(9 - 4/z^2), the Lagrange value attached to the triple."""
        return QuadraticValue.sqrt(9 - Fraction(4, self.z * self.z))


def markov_value(s, tol=DEFAULT_TOL):
    """max of f over the shifts of a purely periodic sequence."""
    if not s.is_purely_periodic:
        raise ValueError("Markov values are computed for purely periodic "
                         "sequences; got preperiod %s" % (s.preperiod,))
    value = max(f_at_shift(s.period, i) for i in range(len(s.period)))
    return SpectrumPoint(value, s, MARKOV, value.enclosure(tol))


def lagrange_value(s, tol=DEFAULT_TOL):
    """limsup of f along the forward orbit: the Markov value of the tail."""
    point = markov_value(s.tail(), tol)
    return SpectrumPoint(point.value, s, LAGRANGE, point.enclosure)


def _mutations(triple):
    x, y, z = triple
    for t in ((x, z, 3 * x * z - y), (y, z, 3 * y * z - x)):
        yield MarkovTriple(*sorted(t))


def markov_triples(limit):
    """The first ``limit`` Markov triples ordered by their largest entry."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    root = MarkovTriple(1, 1, 1)
    heap = [(root.z, root.y, root.x)]
    seen = set([root])
    found = []
    while heap and len(found) < limit:
        z, y, x = heapq.heappop(heap)
        triple = MarkovTriple(x, y, z)
        found.append(triple)
        for child in _mutations(triple):
            if child not in seen:
                seen.add(child)
                heapq.heappush(heap, (child.z, child.y, child.x))
    return found


def canonical_periods(alphabet, max_length):
    """Primitive periods up to rotation, each given by its least rotation."""
    alphabet = sorted(alphabet)
    for length in range(1, max_length + 1):
        for word in product(alphabet, repeat=length):
            rotations = [word[i:] + word[:i] for i in range(length)]
            if word != min(rotations):
                continue
            if any(length % k == 0 and word == word[:k] * (length // k)
                   for k in range(1, length)):
                continue
            yield word


CrosscheckEntry = namedtuple('CrosscheckEntry',
                             ['triple', 'target', 'witness', 'value',
                              'exact'])


def low_spectrum_crosscheck(count, max_period=8, tol=DEFAULT_TOL):
    """Match the first ``count`` Markov spectrum points with periodic
    witnesses over {1, 2} whose Markov value overlaps at ``tol``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    candidates = []
    for period in canonical_periods((1, 2), max_period):
        point = markov_value(PeriodicSeq((), period), tol)
        candidates.append(point)
    report = []
    for triple in markov_triples(count):
        target = triple.spectrum_point()
        target_enclosure = target.enclosure(tol)
        match = None
        for point in candidates:
            if point.enclosure.overlaps(target_enclosure):
                match = point
                break
        if match is None:
            logging.warning("No periodic witness of length <= %d for %s"
                            % (max_period, target))
            report.append(CrosscheckEntry(triple, target, None, None, False))
        else:
            report.append(CrosscheckEntry(triple, target, match.witness,
                                          match.value, match.value == target))
    return report


def _component_paths(graph, component, length, budget):
    """Every path with ``length`` edges inside ``component``."""
    members = set(component)
    paths = [[s] for s in sorted(component)]
    for _ in range(length):
        extended = []
        for path in paths:
            for nxt in sorted(graph.successors(path[-1])):
                if nxt in members:
                    extended.append(path + [nxt])
        if len(extended) > budget:
            raise BudgetExceeded("More than %d refined windows" % budget)
        paths = extended
    return paths


def max_f_over_component(a, component, refinement=2, budget=10 ** 6):
    """Certified interval around max f over a subhorseshoe, from windows
    refined by ``refinement`` symbols on each side."""
    component = [tuple(s) for s in component]
    sub = a.graph.subgraph(component)
    if not component or not nx.is_strongly_connected(sub) or \
            not has_cycle(a.graph, component):
        raise NotStronglyConnected("Component is not a subhorseshoe.")
    lo = hi = None
    for path in _component_paths(a.graph, component, 2 * refinement, budget):
        word = path[0] + tuple(s[-1] for s in path[1:])
        r = f_window_range(word, a.window + refinement, a.N)
        lo = r.lo if lo is None else max(lo, r.lo)
        hi = r.hi if hi is None else max(hi, r.hi)
    return Interval(lo, hi)

