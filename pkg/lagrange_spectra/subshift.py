#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
lagrange_spectra.subshift
-------------------------

Subshift-of-finite-type automata over {1..N}.

States are words of length 2*window + 1 read as symbolic rectangles with the
marked symbol in the middle. There is an edge u -> v whenever u[1:] equals
v[:-1], so every automaton is the induced subgraph of the full shift on its
states. Each state carries the certified range of f over its rectangle.
"""

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from itertools import product
import logging

import networkx as nx

from lagrange_spectra.continued_fractions import f_window_range
from lagrange_spectra.exceptions import BudgetExceeded
from lagrange_spectra.intervals import Interval, to_fraction

OUTER = 'outer'
INNER = 'inner'
PRUNE_MODES = (OUTER, INNER)

DEFAULT_STATE_BUDGET = 300000


class _NoPrune(object):
    def __repr__(self):
        return 'NO_PRUNE'


NO_PRUNE = _NoPrune()


@lru_cache(maxsize=1 << 20)
def _state_range(state, window, N):
    return f_window_range(state, window, N)


class SubshiftAutomaton(object):
    """An immutable automaton realising a sublevel subshift.

    :param N: alphabet bound
    :param window: half-width; states have length ``2 * window + 1``
    :param states: iterable of state words
    :param f_ranges: optional mapping state -> Interval; computed when absent
    :param threads: worker threads used to compute missing f-ranges
    """

    def __init__(self, N, window, states, f_ranges=None, threads=1):
        if N < 1:
            raise ValueError("Alphabet bound must be at least 1.")
        if window < 0:
            raise ValueError("Window must be non-negative.")
        self.N = N
        self.window = window
        self.states = tuple(sorted(set(tuple(s) for s in states)))
        width = 2 * window + 1
        for s in self.states:
            if len(s) != width or min(s) < 1 or max(s) > N:
                raise ValueError("State %s is not a word of length %d over "
                                 "{1..%d}" % (s, width, N))
        self._index = dict((s, i) for i, s in enumerate(self.states))

        if f_ranges is None:
            f_ranges = {}
        missing = [s for s in self.states if s not in f_ranges]
        if missing:
            compute = lambda s: _state_range(s, window, N)  # noqa: E731
            if threads > 1 and len(missing) > 1:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    computed = list(pool.map(compute, missing))
            else:
                computed = [compute(s) for s in missing]
            f_ranges = dict(f_ranges)
            f_ranges.update(zip(missing, computed))
        self.f_ranges = dict((s, f_ranges[s]) for s in self.states)

        by_prefix = {}
        for s in self.states:
            by_prefix.setdefault(s[:-1], []).append(s)
        graph = nx.DiGraph()
        for s in self.states:
            graph.add_node(s, f_range=self.f_ranges[s])
        for s in self.states:
            for v in by_prefix.get(s[1:], ()):
                graph.add_edge(s, v)
        self.graph = nx.freeze(graph)

    @property
    def n_states(self):
        return len(self.states)

    @property
    def n_transitions(self):
        return self.graph.number_of_edges()

    @property
    def transitions(self):
        """Edges as sorted index pairs."""
        return sorted((self._index[u], self._index[v])
                      for u, v in self.graph.edges())

    def index(self, state):
        return self._index[tuple(state)]

    def __contains__(self, state):
        return tuple(state) in self._index

    def __len__(self):
        return len(self.states)

    def is_empty(self):
        return not self.states

    def successors(self, state):
        return sorted(self.graph.successors(tuple(state)))

    def restrict(self, states):
        """The induced automaton on ``states`` (f-ranges reused)."""
        return SubshiftAutomaton(self.N, self.window, states, self.f_ranges)

    @property
    def max_range_width(self):
        """Largest certified f-range width, the resolution of the automaton."""
        if not self.states:
            return Fraction(0)
        return max(r.width for r in self.f_ranges.values())

    def __eq__(self, other):
        if not isinstance(other, SubshiftAutomaton):
            return NotImplemented
        return (self.N, self.window, self.states) == \
            (other.N, other.window, other.states)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.N, self.window, self.states))

    def __repr__(self):
        return "SubshiftAutomaton(N=%d, window=%d, %d states, %d edges)" % (
            self.N, self.window, self.n_states, self.n_transitions)

    def to_json_dict(self):
        """Documented schema: N, window, states, transitions, fRanges."""
        ranges = []
        for s in self.states:
            r = self.f_ranges[s]
            ranges.append([r.lo.numerator, r.lo.denominator,
                           r.hi.numerator, r.hi.denominator])
        return {
            'N': self.N,
            'window': self.window,
            'states': [list(s) for s in self.states],
            'transitions': [list(e) for e in self.transitions],
            'fRanges': ranges,
        }

    @classmethod
    def from_json_dict(cls, data):
        states = [tuple(s) for s in data['states']]
        ranges = dict(
            (s, Interval(to_fraction(r[0]) / r[1], to_fraction(r[2]) / r[3]))
            for s, r in zip(states, data['fRanges']))
        automaton = cls(data['N'], data['window'], states, ranges)
        if automaton.transitions != \
                sorted(tuple(e) for e in data['transitions']):
            raise ValueError("Serialized transitions do not match the "
                             "overlap rule.")
        return automaton


def build_full_shift(N, window, budget=DEFAULT_STATE_BUDGET, threads=1):
    """All words of length 2*window + 1 over {1..N} with overlap edges."""
    if N < 1:
        raise ValueError("N must be at least 1.")
    if window < 1:
        raise ValueError("window must be at least 1.")
    size = N ** (2 * window + 1)
    if budget is not None and size > budget:
        raise BudgetExceeded("Full shift N=%d window=%d has %d states, over "
                             "the budget of %d" % (N, window, size, budget))
    states = product(range(1, N + 1), repeat=2 * window + 1)
    automaton = SubshiftAutomaton(N, window, states, threads=threads)
    logging.info("Built full shift N=%d window=%d: %d states, %d transitions"
                 % (N, window, automaton.n_states, automaton.n_transitions))
    return automaton


def essential_states(graph, nodes):
    """Recursively drop states without an incoming or an outgoing edge."""
    g = graph.subgraph(nodes).copy()
    while True:
        dead = [n for n in g if g.in_degree(n) == 0 or g.out_degree(n) == 0]
        if not dead:
            return sorted(g)
        g.remove_nodes_from(dead)


def prune_sublevel(a, t, mode=OUTER):
    """Keep states whose f-range is certified to meet (outer) or to lie
    inside (inner) the sublevel {f <= t}, then clean up."""
    if t is NO_PRUNE:
        return a
    if mode not in PRUNE_MODES:
        raise ValueError("Unknown prune mode %r" % (mode,))
    t = to_fraction(t)
    if mode == OUTER:
        kept = [s for s in a.states if a.f_ranges[s].lo <= t]
    else:
        kept = [s for s in a.states if a.f_ranges[s].hi <= t]
    pruned = a.restrict(essential_states(a.graph, kept))
    logging.info("Pruned (%s, t=%s): %d -> %d states"
                 % (mode, t, a.n_states, pruned.n_states))
    return pruned


def has_cycle(graph, nodes):
    return bool(essential_states(graph, nodes))


def is_single_cycle(a, component):
    """True when a strongly connected component is one simple cycle."""
    sub = a.graph.subgraph(component)
    return sub.number_of_edges() == sub.number_of_nodes()


class ComponentDecomposition(namedtuple(
        'ComponentDecomposition',
        ['subhorseshoes', 'transient_pairs', 'transient_states',
         'orphan_states'])):
    """Subhorseshoes (tuples of states, ordered by their least state),
    transient pairs (i, j) meaning a path from subhorseshoe i to j, states
    on such connecting paths, and orphans lying on neither."""

    __slots__ = ()

    def component_containing(self, states):
        """Index of the subhorseshoe containing all of ``states``, or None."""
        states = set(tuple(s) for s in states)
        for i, comp in enumerate(self.subhorseshoes):
            if states <= set(comp):
                return i
        return None


def scc_decompose(a):
    sccs = list(nx.strongly_connected_components(a.graph))
    cyclic = [c for c in sccs
              if len(c) > 1 or a.graph.has_edge(next(iter(c)), next(iter(c)))]
    subhorseshoes = sorted((tuple(sorted(c)) for c in cyclic),
                           key=lambda comp: comp[0])

    condensed = nx.condensation(a.graph, sccs)
    mapping = condensed.graph['mapping']
    comp_node = [mapping[comp[0]] for comp in subhorseshoes]
    node_comp = dict((n, i) for i, n in enumerate(comp_node))

    pairs = []
    below = []
    for i, node in enumerate(comp_node):
        reachable = nx.descendants(condensed, node)
        below.append(reachable)
        for other in sorted(node_comp[n] for n in reachable
                            if n in node_comp):
            pairs.append((i, other))

    in_horseshoe = set(s for comp in subhorseshoes for s in comp)
    downstream = set().union(*below) if below else set()
    upstream = set()
    for node in comp_node:
        upstream |= nx.ancestors(condensed, node)
    transient, orphans = [], []
    for s in a.states:
        if s in in_horseshoe:
            continue
        node = mapping[s]
        if node in downstream and node in upstream:
            transient.append(s)
        else:
            orphans.append(s)
    return ComponentDecomposition(subhorseshoes, sorted(pairs),
                                  tuple(transient), tuple(orphans))


def transpose(a):
    """Reverse every state word and hence every transition."""
    return SubshiftAutomaton(a.N, a.window, (s[::-1] for s in a.states))


def reach_witness(a, sources, targets):
    """A shortest path (list of states) from ``sources`` to ``targets``.

    Returns ``[s]`` when a state is in both sets and None when no path
    exists.
    """
    sources = sorted(set(tuple(s) for s in sources) & set(a.states))
    targets = set(tuple(s) for s in targets) & set(a.states)
    if not sources or not targets:
        return None
    common = sorted(set(sources) & targets)
    if common:
        return [common[0]]
    lengths, paths = nx.multi_source_dijkstra(a.graph, sources)
    reached = sorted((lengths[s], s) for s in targets if s in lengths)
    if not reached:
        return None
    return list(paths[reached[0][1]])


def cycle_bottleneck(a, component):
    """Least theta such that the states of ``component`` whose f-range starts
    at or below theta still carry a cycle. Every orbit living in the
    component has Lagrange value at least this theta."""
    component = [tuple(s) for s in component]
    levels = sorted(set(a.f_ranges[s].lo for s in component))
    lo, hi = 0, len(levels) - 1
    if not levels or not has_cycle(a.graph, component):
        raise ValueError("Component carries no cycle.")
    while lo < hi:
        mid = (lo + hi) // 2
        kept = [s for s in component if a.f_ranges[s].lo <= levels[mid]]
        if has_cycle(a.graph, kept):
            hi = mid
        else:
            lo = mid + 1
    return levels[lo]
