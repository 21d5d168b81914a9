#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
lagrange_spectra.dimension
--------------------------

Dimension estimators for the unstable Cantor sets of subshift automata.

Two independent methods are provided behind ``EstimatorBase``:

* ``BoxCountEstimator`` counts the minimal covering words of each scale
  e**-r exactly and reads the growth rate off secant slopes;
* ``PressureEstimator`` finds the zero of the pressure of the
  cylinder-ratio weighted transition matrix by bisection, with spectral
  radii from power iteration.

``dim_finite_type`` assembles planar dimensions of a decomposition and
``sumset_boxdim`` box-counts arithmetic sums of Gauss-Cantor sets.
"""

import abc
from collections import namedtuple
from fractions import Fraction
from itertools import product
import logging
import math

import networkx as nx
import numpy as np
from scipy import sparse

from lagrange_spectra.continued_fractions import convergents, \
    cylinder_interval, exp_threshold, inverse_length
from lagrange_spectra.exceptions import BudgetExceeded, NotStronglyConnected
from lagrange_spectra.subshift import SubshiftAutomaton, is_single_cycle, \
    scc_decompose, transpose

BOXCOUNT = 'boxcount'
PRESSURE = 'pressure'
FINITE_TYPE = 'finite-type'

DEFAULT_WORD_BUDGET = 50000000
DEFAULT_PRESSURE_TOL = 1e-9
MAX_POWER_ITERATIONS = 100000
CHUNK = 1 << 20


class DimensionEstimate(namedtuple('DimensionEstimate',
                                   ['lo', 'hi', 'method', 'diagnostics'])):
    """A bracket [lo, hi] for a dimension plus the method's trace."""

    __slots__ = ()

    @classmethod
    def make(cls, lo, hi, method, diagnostics=None, upper=1.0):
        lo = min(max(float(lo), 0.0), upper)
        hi = min(max(float(hi), 0.0), upper)
        if lo > hi:
            lo, hi = hi, lo
        return cls(lo, hi, method, diagnostics if diagnostics else [])

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    @property
    def width(self):
        return self.hi - self.lo

    def overlaps(self, other, slack=0.0):
        return self.lo <= other.hi + slack and other.lo <= self.hi + slack


def alphabet_automaton(alphabet, window=0):
    """The full shift over a finite alphabet with states of length
    2*window + 1."""
    alphabet = sorted(set(int(b) for b in alphabet))
    if not alphabet or alphabet[0] < 1:
        raise ValueError("An alphabet is a non-empty set of positive "
                         "integers.")
    return SubshiftAutomaton(alphabet[-1], window,
                             product(alphabet, repeat=2 * window + 1))


def _as_automaton(X):
    if isinstance(X, SubshiftAutomaton):
        return X
    return alphabet_automaton(X)


# -- covering counts ---------------------------------------------------------


def _thresholds(r_max, N):
    thresholds = [exp_threshold(r) for r in range(r_max + 1)]
    # products q * (q + q_prev) one symbol past the last threshold
    if thresholds[-1] * 4 * (N + 1) ** 2 < 2 ** 62:
        return np.array(thresholds, dtype=np.int64), np.int64
    return np.array(thresholds, dtype=object), object


def _add_contributions(table, parent_scale, scale, r_max):
    """Word w counts at every r in (scale(parent), scale(w)]."""
    start = parent_scale + 1
    stop = np.minimum(scale, r_max) + 1
    keep = stop > start
    if np.any(keep):
        size = r_max + 2
        table += np.bincount(start[keep].astype(np.int64), minlength=size)
        table -= np.bincount(stop[keep].astype(np.int64), minlength=size)


def covering_table(X, r_max, budget=DEFAULT_WORD_BUDGET):
    """|C(X, r)| for r = 0..r_max, where C(X, r) is the set of non-empty
    admissible words w with |I(w)| <= e**-r whose parent is either empty or
    still longer than e**-r.

    ``X`` is a SubshiftAutomaton or a finite alphabet. Admissible words are
    the prefixes of states and the labels of longer paths.
    """
    if r_max < 0:
        raise ValueError("r must be non-negative")
    a = _as_automaton(X)
    diff = np.zeros(r_max + 2, dtype=np.int64)
    if a.is_empty():
        return [0] * (r_max + 1)
    thresholds, dtype = _thresholds(r_max, a.N)

    def scale_of(m):
        return np.searchsorted(thresholds, m, side='right') - 1

    # prefixes of states, shortest first
    prefixes = sorted(set(s[:k] for s in a.states
                          for k in range(1, len(s) + 1)))
    m_word = np.array([inverse_length(p) for p in prefixes], dtype=dtype)
    m_parent = np.array([inverse_length(p[:-1]) if len(p) > 1 else 0
                         for p in prefixes], dtype=dtype)
    parent_scale = np.where(m_parent == 0, -1, scale_of(m_parent))
    _add_contributions(diff, parent_scale, scale_of(m_word), r_max)
    processed = len(prefixes)

    # longer words: frontier of (q, q_prev, last state) over the edges
    index = dict((s, i) for i, s in enumerate(a.states))
    rows, cols = [], []
    for u, v in a.graph.edges():
        rows.append(index[u])
        cols.append(index[v])
    adjacency = sparse.csr_matrix(
        (np.ones(len(rows), dtype=np.int8), (rows, cols)),
        shape=(a.n_states, a.n_states))
    indptr, targets = adjacency.indptr, adjacency.indices
    last_symbol = np.array([s[-1] for s in a.states], dtype=dtype)

    conts = [convergents(s) for s in a.states]
    q = np.array([c.q for c in conts], dtype=dtype)
    q_prev = np.array([c.q_prev for c in conts], dtype=dtype)
    scale = scale_of(q * (q + q_prev))
    alive = scale < r_max
    stack = [(q[alive], q_prev[alive], scale[alive],
              np.nonzero(alive)[0])]

    while stack:
        q, q_prev, scale, state = stack.pop()
        degree = indptr[state + 1] - indptr[state]
        total = int(degree.sum())
        if total == 0:
            continue
        processed += total
        if processed > budget:
            table = np.cumsum(diff)[:r_max + 1]
            raise BudgetExceeded(
                "Covering enumeration passed %d words" % budget,
                partial=[int(c) for c in table])
        parent = np.repeat(np.arange(len(state)), degree)
        offsets = np.arange(total) - np.repeat(np.cumsum(degree) - degree,
                                               degree)
        nxt = targets[indptr[state][parent] + offsets]
        b = last_symbol[nxt]
        new_q = b * q[parent] + q_prev[parent]
        new_prev = q[parent]
        new_scale = scale_of(new_q * (new_q + new_prev))
        _add_contributions(diff, scale[parent], new_scale, r_max)
        alive = new_scale < r_max
        if not np.any(alive):
            continue
        new_q, new_prev = new_q[alive], new_prev[alive]
        new_scale, nxt = new_scale[alive], nxt[alive]
        for lo in range(0, len(nxt), CHUNK):
            hi = lo + CHUNK
            stack.append((new_q[lo:hi], new_prev[lo:hi], new_scale[lo:hi],
                          nxt[lo:hi]))

    table = np.cumsum(diff)[:r_max + 1]
    logging.info("Covering table to r=%d over %d words: %s"
                 % (r_max, processed, list(table)))
    return [int(c) for c in table]


def covering_count(X, r, budget=DEFAULT_WORD_BUDGET):
    """|C(X, r)|, the number of minimal covering words at scale e**-r."""
    return covering_table(X, r, budget)[r]


def secant_slopes(log_counts, start, span):
    """(log_counts[i] - log_counts[i - span]) / span for i >= start."""
    slopes = []
    for i in range(max(start, span), len(log_counts)):
        if log_counts[i] is None or log_counts[i - span] is None:
            continue
        slopes.append((i, (log_counts[i] - log_counts[i - span]) / span))
    return slopes


def _slope_span(r_max):
    return max(1, r_max // 3)


def boxdim_estimate(X, r_max, budget=DEFAULT_WORD_BUDGET, table=None):
    """Box dimension bracket from the covering counts up to ``r_max``.

    lo/hi are the extreme secant slopes of log|C(r)| over the tail
    r_max/2 .. r_max.
    """
    if r_max < 4:
        raise ValueError("r_max must be at least 4")
    if table is None:
        table = covering_table(X, r_max, budget)
    logs = [math.log(c) if c > 0 else None for c in table[:r_max + 1]]
    if all(c == 0 for c in table[1:]):
        return DimensionEstimate.make(0, 0, BOXCOUNT,
                                      list(enumerate(table)))
    slopes = secant_slopes(logs, (r_max + 1) // 2, _slope_span(r_max))
    values = [s for _, s in slopes] or [0.0]
    diagnostics = [(r, table[r], dict(slopes).get(r))
                   for r in range(r_max + 1)]
    return DimensionEstimate.make(min(values), max(values), BOXCOUNT,
                                  diagnostics)


def richardson_reference(X, r_max, budget=DEFAULT_WORD_BUDGET):
    """Reference bracket from one level deeper: the secant slopes at
    r_max + 1 together with their two-point Richardson extrapolation."""
    table = covering_table(X, r_max + 1, budget)
    logs = [math.log(c) if c > 0 else None for c in table]
    span = _slope_span(r_max)
    near = (logs[-1] - logs[-1 - span]) / span
    far = (logs[-1] - logs[-1 - 2 * span]) / (2 * span) \
        if r_max + 1 >= 2 * span else near
    extrapolated = 2 * near - far
    return DimensionEstimate.make(min(near, extrapolated),
                                  max(near, extrapolated), BOXCOUNT,
                                  list(enumerate(table)))


# -- pressure ----------------------------------------------------------------


class WeightedAutomaton(object):
    """A transition graph on ``n_states`` with positive edge weights.

    Parallel edges are allowed; ``edges`` holds (source, target, weight).
    """

    def __init__(self, n_states, edges):
        self.n_states = n_states
        self.edges = []
        for i, j, w in edges:
            w = float(w)
            if not (0 < w < float('inf')):
                raise ValueError("Edge weights must be positive and finite, "
                                 "got %s" % w)
            if not (0 <= i < n_states and 0 <= j < n_states):
                raise ValueError("Edge (%s, %s) outside the state range"
                                 % (i, j))
            self.edges.append((i, j, w))

    @classmethod
    def from_automaton(cls, a):
        """Weights |I(u b)| / |I(u)| for the edge u -> v appending b."""
        index = dict((s, i) for i, s in enumerate(a.states))
        edges = []
        for u, v in sorted(a.graph.edges()):
            ratio = Fraction(inverse_length(u), inverse_length(u + v[-1:]))
            edges.append((index[u], index[v], ratio))
        return cls(a.n_states, edges)

    @classmethod
    def self_similar(cls, k, ratio):
        """One state with ``k`` loops of weight ``ratio``."""
        return cls(1, [(0, 0, ratio)] * k)

    def is_strongly_connected(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n_states))
        graph.add_edges_from((i, j) for i, j, _ in self.edges)
        return self.n_states > 0 and nx.is_strongly_connected(graph) and \
            len(self.edges) > 0

    def is_single_cycle(self):
        return len(self.edges) == self.n_states

    def matrix(self, s):
        """M(s) with entries weight**s, parallel edges summed."""
        rows = np.array([e[0] for e in self.edges], dtype=np.int64)
        cols = np.array([e[1] for e in self.edges], dtype=np.int64)
        weights = np.array([e[2] for e in self.edges], dtype=float) ** s
        return sparse.csr_matrix((weights, (rows, cols)),
                                 shape=(self.n_states, self.n_states))


def spectral_radius_bounds(matrix, x0=None, tol=1e-12,
                           max_iter=MAX_POWER_ITERATIONS, stop=None):
    """Collatz-Wielandt bounds on the Perron root of an irreducible
    non-negative matrix, by power iteration on M + I.

    ``stop(lo, hi)`` may end the iteration early once the bounds decide
    what the caller needs. Returns (lo, hi, vector, iterations).
    """
    n = matrix.shape[0]
    shifted = matrix + sparse.identity(n, format='csr')
    x = np.ones(n) if x0 is None else np.array(x0, dtype=float)
    lo, hi = 0.0, float('inf')
    for it in range(1, max_iter + 1):
        y = shifted.dot(x)
        ratios = y / x
        lo, hi = ratios.min() - 1.0, ratios.max() - 1.0
        x = y / np.linalg.norm(y)
        if hi - lo < tol or (stop is not None and stop(lo, hi)):
            return lo, hi, x, it
    logging.warning("Power iteration stopped after %d iterations with "
                    "bounds [%r, %r]" % (max_iter, lo, hi))
    return lo, hi, x, max_iter


def pressure_dim(w, tol=DEFAULT_PRESSURE_TOL):
    """Root s* of rho(M(s)) = 1 by bisection on [0, 1]."""
    if not w.is_strongly_connected():
        raise NotStronglyConnected("pressure_dim needs a strongly connected "
                                   "automaton; decompose first.")
    if w.is_single_cycle():
        return DimensionEstimate.make(0, 0, PRESSURE, [])
    lo, hi = 0.0, 1.0
    vector = None
    trace = []
    while hi - lo > tol:
        s = (lo + hi) / 2
        r_lo, r_hi, vector, its = spectral_radius_bounds(
            w.matrix(s), vector, tol / 10,
            stop=lambda a, b: a > 1.0 or b < 1.0)
        trace.append((s, r_lo, r_hi, its))
        if (r_lo + r_hi) / 2 > 1.0:
            lo = s
        else:
            hi = s
    return DimensionEstimate.make(lo, hi, PRESSURE, trace)


# -- estimator interface -----------------------------------------------------


class EstimatorBase(object, metaclass=abc.ABCMeta):
    """
    Dimension estimator interface.
    """

    method = None

    @abc.abstractmethod
    def estimate(self, automaton):
        """Unstable dimension bracket of a strongly connected automaton."""
        return

    def estimate_component(self, a, component):
        sub = a.restrict(component)
        if is_single_cycle(sub, sub.states):
            return DimensionEstimate.make(0, 0, self.method, [])
        return self.estimate(sub)


class BoxCountEstimator(EstimatorBase):
    """Covering-count implementation."""

    method = BOXCOUNT

    def __init__(self, r_max, budget=DEFAULT_WORD_BUDGET):
        self.r_max = r_max
        self.budget = budget

    def estimate(self, automaton):
        return boxdim_estimate(automaton, self.r_max, self.budget)


class PressureEstimator(EstimatorBase):
    """Transfer-matrix implementation."""

    method = PRESSURE

    def __init__(self, tol=DEFAULT_PRESSURE_TOL):
        self.tol = tol

    def estimate(self, automaton):
        return pressure_dim(WeightedAutomaton.from_automaton(automaton),
                            self.tol)


def make_estimator(method, r_max=24, tol=DEFAULT_PRESSURE_TOL,
                   budget=DEFAULT_WORD_BUDGET):
    if method == BOXCOUNT:
        return BoxCountEstimator(r_max, budget)
    if method == PRESSURE:
        return PressureEstimator(tol)
    raise ValueError("Unknown dimension method %r" % (method,))


def dim_finite_type(d, unstable, stable):
    """Planar dimension of a hyperbolic set of finite type.

    :param d: ComponentDecomposition
    :param unstable: DimensionEstimate per subhorseshoe (same order)
    :param stable: DimensionEstimate per subhorseshoe, from the transpose
    :return: bracket in [0, 2]: the max of 2*D_u over subhorseshoes and of
        D_s(i) + D_u(j) over transient pairs (i, j)
    """
    count = len(d.subhorseshoes)
    if len(unstable) != count or len(stable) != count or \
            any(e is None for e in list(unstable) + list(stable)):
        raise ValueError("A dimension estimate is required for each of the "
                         "%d subhorseshoes" % count)
    if not count:
        return DimensionEstimate.make(0, 0, FINITE_TYPE, [], upper=2.0)
    terms = [('subhorseshoe', i, 2 * unstable[i].lo, 2 * unstable[i].hi)
             for i in range(count)]
    for i, j in d.transient_pairs:
        terms.append(('transient', (i, j), stable[i].lo + unstable[j].lo,
                      stable[i].hi + unstable[j].hi))
    return DimensionEstimate.make(max(t[2] for t in terms),
                                  max(t[3] for t in terms), FINITE_TYPE,
                                  terms, upper=2.0)


def planar_dimension(a, estimator, decomposition=None):
    """dim_finite_type of ``a`` with unstable dimensions of its subhorseshoes
    and stable ones from the same subhorseshoes of the transpose.

    Returns the planar bracket and the per-subhorseshoe unstable estimates.
    """
    d = decomposition if decomposition is not None else scc_decompose(a)
    reverse = transpose(a)
    unstable = [estimator.estimate_component(a, comp)
                for comp in d.subhorseshoes]
    stable = [estimator.estimate_component(reverse, [s[::-1] for s in comp])
              for comp in d.subhorseshoes]
    return dim_finite_type(d, unstable, stable), unstable


# -- sums of Cantor sets -----------------------------------------------------


def _cylinders(alphabet, depth):
    words = [()]
    for _ in range(depth):
        words = [w + (b,) for w in words for b in alphabet]
    ends = [cylinder_interval(w) for w in words]
    lo = np.array([float(c.lo) for c in ends])
    hi = np.array([float(c.hi) for c in ends])
    return lo, hi


def _merge(lo, hi):
    order = np.lexsort((hi, lo))
    lo, hi = lo[order], hi[order]
    reach = np.maximum.accumulate(hi)
    starts = np.ones(len(lo), dtype=bool)
    starts[1:] = lo[1:] > reach[:-1]
    group = np.cumsum(starts) - 1
    merged_lo = lo[starts]
    merged_hi = np.zeros(len(merged_lo))
    np.maximum.at(merged_hi, group, hi)
    return merged_lo, merged_hi


def count_cells(lo, hi, delta):
    """Grid cells of side ``delta`` met by sorted disjoint components.

    Components shorter than ``delta`` count through their midpoint only.
    """
    short = (hi - lo) < delta
    first = np.where(short, np.floor((lo + hi) / 2 / delta),
                     np.floor(lo / delta)).astype(np.int64)
    last = np.where(short, first, np.floor(hi / delta)).astype(np.int64)
    covered = np.maximum.accumulate(last)
    previous = np.concatenate(([first[0] - 1], covered[:-1]))
    fresh = last - np.maximum(first, previous + 1) + 1
    return int(np.clip(fresh, 0, None).sum())


def sumset_boxdim(alphabet1, alphabet2, depth, budget=DEFAULT_WORD_BUDGET):
    """Box dimension bracket of K(B1) + K(B2) from depth-``depth`` covers."""
    alphabet1 = sorted(set(alphabet1))
    alphabet2 = sorted(set(alphabet2))
    if not alphabet1 or not alphabet2:
        raise ValueError("Alphabets must be non-empty")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    pairs = len(alphabet1) ** depth * len(alphabet2) ** depth
    if pairs > budget:
        raise BudgetExceeded("%d interval sums exceed the budget of %d"
                             % (pairs, budget))
    lo1, hi1 = _cylinders(alphabet1, depth)
    lo2, hi2 = _cylinders(alphabet2, depth)
    step = max(1, CHUNK // len(lo2))
    parts_lo, parts_hi = [], []
    for start in range(0, len(lo1), step):
        a_lo = (lo1[start:start + step, None] + lo2[None, :]).ravel()
        a_hi = (hi1[start:start + step, None] + hi2[None, :]).ravel()
        m_lo, m_hi = _merge(a_lo, a_hi)
        parts_lo.append(m_lo)
        parts_hi.append(m_hi)
    lo, hi = _merge(np.concatenate(parts_lo), np.concatenate(parts_hi))
    longest = float((hi1 - lo1).max() + (hi2 - lo2).max())
    delta_min = 16 * longest

    counts = []
    j = 1
    while 2.0 ** -j >= delta_min:
        counts.append((j, count_cells(lo, hi, 2.0 ** -j)))
        j += 1
    logging.info("Sumset %s+%s depth %d: %d components, cell counts %s"
                 % (alphabet1, alphabet2, depth, len(lo), counts))
    if len(counts) < 2:
        raise ValueError("depth %d is too shallow to resolve two scales"
                         % depth)
    # only secants ending at the two finest scales: coarse dyadic cells
    # still see the gaps between first-level sums
    logs = [None] + [math.log(c) for _, c in counts]
    finest = max(2, len(counts) - 1)
    values = []
    for span in range(1, max(1, len(counts) // 5) + 1):
        values.extend(s / math.log(2)
                      for _, s in secant_slopes(logs, finest, span))
    return DimensionEstimate.make(min(values), max(values), BOXCOUNT,
                                  counts)
