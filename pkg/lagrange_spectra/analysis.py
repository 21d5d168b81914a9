#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
lagrange_spectra.analysis
-------------------------

The dimension function D(t) of the sublevel sets, its left and right
inverses, connections between subhorseshoes, increasing families of
subhorseshoes, the concatenation construction reaching a prescribed
Lagrange value, and the finite-resolution classifier of spectrum points.

All functions take a ``Resolution``; results are brackets, never points.
"""

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
import logging

import networkx as nx

from lagrange_spectra.continued_fractions import PeriodicSeq, max_f_bound
from lagrange_spectra.dimension import DEFAULT_PRESSURE_TOL, PRESSURE, \
    make_estimator
from lagrange_spectra.exceptions import ConnectionNotFound, \
    NotStronglyConnected
from lagrange_spectra.intervals import Interval, to_fraction
from lagrange_spectra.spectra import markov_value, max_f_over_component
from lagrange_spectra.subshift import DEFAULT_STATE_BUDGET, INNER, OUTER, \
    SubshiftAutomaton, build_full_shift, cycle_bottleneck, prune_sublevel, \
    reach_witness, scc_decompose

LOWER_SEARCH_END = Fraction(2)

J_LIKE = 'J-like'
F_LIKE = 'F-like'
JTILDE_LIKE = 'Jtilde-like'
INDETERMINATE = 'indeterminate'


class Resolution(namedtuple('Resolution',
                            ['N', 'window', 'r_max', 'method', 'tol',
                             'refinement', 'budget', 'threads'])):
    """How finely the model is resolved: alphabet, window, estimator."""

    __slots__ = ()

    def __new__(cls, N=2, window=3, r_max=24, method=PRESSURE,
                tol=DEFAULT_PRESSURE_TOL, refinement=2,
                budget=DEFAULT_STATE_BUDGET, threads=1):
        return super(Resolution, cls).__new__(
            cls, N, window, r_max, method, tol, refinement, budget, threads)

    def estimator(self):
        return make_estimator(self.method, self.r_max, self.tol)


@lru_cache(maxsize=16)
def full_shift(N, window, budget=DEFAULT_STATE_BUDGET, threads=1):
    return build_full_shift(N, window, budget, threads)


def _automaton(resolution, automaton=None):
    if automaton is not None:
        return automaton
    return full_shift(resolution.N, resolution.window, resolution.budget,
                      resolution.threads)


@lru_cache(maxsize=4096)
def _component_dimension(N, window, component, method, r_max, tol):
    a = SubshiftAutomaton(N, window, component)
    estimator = make_estimator(method, r_max, tol)
    return estimator.estimate_component(a, component)


def component_dimension(a, component, resolution):
    """Unstable dimension bracket of one subhorseshoe of ``a``."""
    return _component_dimension(a.N, a.window, tuple(sorted(component)),
                                resolution.method, resolution.r_max,
                                resolution.tol)


def dimension_range(a, resolution):
    """(max lo, max hi) of the subhorseshoe dimensions of ``a``; zeros when
    it has none."""
    estimates = [component_dimension(a, comp, resolution)
                 for comp in scc_decompose(a).subhorseshoes]
    if not estimates:
        return 0.0, 0.0
    return max(e.lo for e in estimates), max(e.hi for e in estimates)


# -- D(t) ----------------------------------------------------------------


class DCurvePoint(namedtuple('DCurvePoint',
                             ['t', 'dLo', 'dHi', 'window', 'r_max', 'lLo',
                              'lHi'])):
    """Bracket dLo <= D(t) <= dHi, with L = min(1, 2D) alongside."""

    __slots__ = ()

    @classmethod
    def make(cls, t, d_lo, d_hi, resolution):
        d_lo = min(d_lo, d_hi)
        return cls(t, d_lo, d_hi, resolution.window, resolution.r_max,
                   min(1.0, 2 * d_lo), min(1.0, 2 * d_hi))


def D_of_t(t, resolution, automaton=None):
    """Two-sided bracket for D(t): the inner prune bounds it from below and
    the outer prune from above."""
    t = to_fraction(t)
    a = _automaton(resolution, automaton)
    if t >= max_f_bound(a.N):
        logging.warning("t=%s is at or beyond max f = sqrt(%d) of the model; "
                        "nothing is pruned" % (t, a.N * a.N + 4 * a.N))
    _, d_hi = dimension_range(prune_sublevel(a, t, OUTER), resolution)
    d_lo, _ = dimension_range(prune_sublevel(a, t, INNER), resolution)
    logging.info("D(%s) in [%.6f, %.6f]" % (t, d_lo, d_hi))
    return DCurvePoint.make(t, d_lo, d_hi, resolution)


def parse_grid(text):
    """``"a:b:step"`` into the exact list a, a+step, ..., <= b."""
    parts = text.split(':')
    if len(parts) != 3:
        raise ValueError("A grid is written start:stop:step, got %r" % text)
    start, stop, step = (to_fraction(p) for p in parts)
    if step <= 0:
        raise ValueError("Grid step must be positive")
    grid = []
    t = start
    while t <= stop:
        grid.append(t)
        t += step
    return grid


def d_curve(grid, resolution, automaton=None):
    """D_of_t along a sorted grid, with dHi made nonincreasing from the
    right and dLo nondecreasing from the left (both remain valid bounds)."""
    grid = [to_fraction(t) for t in grid]
    if grid != sorted(grid):
        raise ValueError("The t grid must be sorted")
    a = _automaton(resolution, automaton)
    compute = lambda t: D_of_t(t, resolution, a)  # noqa: E731
    if resolution.threads > 1:
        with ThreadPoolExecutor(max_workers=resolution.threads) as pool:
            raw = list(pool.map(compute, grid))
    else:
        raw = [compute(t) for t in grid]
    his = [p.dHi for p in raw]
    for i in range(len(his) - 2, -1, -1):
        his[i] = min(his[i], his[i + 1])
    los = [p.dLo for p in raw]
    for i in range(1, len(los)):
        los[i] = max(los[i], los[i - 1])
    return [DCurvePoint.make(p.t, lo, hi, resolution)
            for p, lo, hi in zip(raw, los, his)]


# -- inverses of D -------------------------------------------------------


EtaBracket = namedtuple('EtaBracket',
                        ['eta', 't_a', 't_b', 'd_a', 'd_b', 'indeterminate',
                         'degenerate'])


def _upper_search_end(N):
    return max_f_bound(N).enclosure(Fraction(1, 10 ** 6)).hi + 1


def _check_eta(eta, top):
    if eta < 0 or eta > top.dHi:
        raise ValueError("eta=%s outside the achievable range [0, %.6f]"
                         % (eta, top.dHi))


def eta_minus(eta, tol_t, resolution, automaton=None):
    """Bracket [t_a, t_b] for min{t : D(t) = eta}.

    dHi(t_a) < eta <= dHi(t_b) and t_b - t_a <= tol_t. The bracket is
    ``indeterminate`` when dLo(t_b) < eta, i.e. the resolution cannot
    certify that D has reached eta at t_b.
    """
    eta = float(eta)
    tol_t = to_fraction(tol_t)
    a = _automaton(resolution, automaton)
    lo, hi = LOWER_SEARCH_END, _upper_search_end(a.N)
    top = D_of_t(hi, resolution, a)
    _check_eta(eta, top)
    bottom = D_of_t(lo, resolution, a)
    if eta == 0:
        return EtaBracket(eta, lo, lo, bottom, bottom, False, True)
    if bottom.dHi >= eta:
        raise ValueError("dHi(%s) already reaches eta=%s" % (lo, eta))
    while hi - lo > tol_t:
        mid = (lo + hi) / 2
        point = D_of_t(mid, resolution, a)
        if point.dHi >= eta:
            hi, top = mid, point
        else:
            lo, bottom = mid, point
    logging.info("eta_minus(%s) in [%s, %s]" % (eta, lo, hi))
    return EtaBracket(eta, lo, hi, bottom, top, top.dLo < eta, False)


def eta_plus(eta, tol_t, resolution, automaton=None):
    """Bracket [t_a, t_b] for max{t : D(t) = eta}.

    dLo(t_a) <= eta < dLo(t_b); ``indeterminate`` when dHi(t_a) > eta.
    When even the unpruned model has dLo <= eta the bracket is open to the
    right and flagged ``degenerate``.
    """
    eta = float(eta)
    tol_t = to_fraction(tol_t)
    a = _automaton(resolution, automaton)
    lo, hi = LOWER_SEARCH_END, _upper_search_end(a.N)
    top = D_of_t(hi, resolution, a)
    _check_eta(eta, top)
    bottom = D_of_t(lo, resolution, a)
    if top.dLo <= eta:
        return EtaBracket(eta, hi, hi, top, top, True, True)
    while hi - lo > tol_t:
        mid = (lo + hi) / 2
        point = D_of_t(mid, resolution, a)
        if point.dLo > eta:
            hi, top = mid, point
        else:
            lo, bottom = mid, point
    return EtaBracket(eta, lo, hi, bottom, top, bottom.dHi > eta, False)


# -- connections ---------------------------------------------------------


ConnectionVerdict = namedtuple('ConnectionVerdict',
                               ['connected', 'forward', 'backward',
                                'enclosing', 't', 'eps'])


def connect_check(a, comp1, comp2, t, eps):
    """Do two subhorseshoes of the outer prune at t connect before t + eps?

    ``a`` is the unpruned automaton. The verdict holds when each component
    reaches the other inside the outer prune at t + eps; ``enclosing`` is
    then the subhorseshoe there containing both.
    """
    t = to_fraction(t)
    eps = to_fraction(eps)
    comp1 = sorted(tuple(s) for s in comp1)
    comp2 = sorted(tuple(s) for s in comp2)
    at_t = prune_sublevel(a, t, OUTER)
    if not all(s in at_t for s in comp1 + comp2):
        raise ValueError("Both components must survive the outer prune at "
                         "t=%s" % t)
    inside = scc_decompose(at_t)
    for comp in (comp1, comp2):
        if inside.component_containing(comp) is None:
            raise NotStronglyConnected(
                "%s is not inside a subhorseshoe of the outer prune at t=%s"
                % (comp, t))
    later = prune_sublevel(a, t + eps, OUTER)
    if not all(s in later for s in comp1 + comp2):
        raise RuntimeError("Outer pruning is monotone, yet a component "
                           "vanished between t=%s and t=%s" % (t, t + eps))
    decomposition = scc_decompose(later)
    if comp1 == comp2:
        index = decomposition.component_containing(comp1)
        return ConnectionVerdict(True, [], [],
                                 decomposition.subhorseshoes[index], t, eps)
    forward = reach_witness(later, comp1, comp2)
    backward = reach_witness(later, comp2, comp1)
    if forward is None or backward is None:
        return ConnectionVerdict(False, forward, backward, None, t, eps)
    index = decomposition.component_containing(comp1 + comp2)
    return ConnectionVerdict(True, forward, backward,
                             decomposition.subhorseshoes[index], t, eps)


def fixed_component(a, symbol):
    """The singleton subhorseshoe of the constant word, if present."""
    state = (symbol,) * (2 * a.window + 1)
    return [state] if state in a else None


def connects_with_ones(a, t, eps):
    """For each subhorseshoe of the outer prune at t, whether it connects
    with the fixed orbit of 1 before t + eps."""
    pruned = prune_sublevel(a, t, OUTER)
    ones = fixed_component(pruned, 1)
    if ones is None:
        return []
    return [(i, connect_check(a, comp, ones, t, eps).connected)
            for i, comp in enumerate(scc_decompose(pruned).subhorseshoes)]


# -- increasing families -------------------------------------------------


FamilyStage = namedtuple('FamilyStage',
                         ['t_n', 't_next', 'component', 'dim', 'maxF',
                          'dimension_bullet'])

Family = namedtuple('Family', ['stages', 'union', 'degenerate',
                               'diagnostic'])


def increasing_family(eta, eps, n_max, resolution, grid_points=None,
                      automaton=None):
    """Stages t_n < t_{n+1} with nested subhorseshoes whose max f lies in
    (t_n, t_{n+1}) and whose dimensions strictly increase.

    Stage components come from the inner prune at t_{n+1}; each contains
    the previous one, so consecutive stages connect and the last stage is
    the union. Stages whose dimension does not certifiably exceed dHi(t_n)
    are kept and named in the diagnostic.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    eps = to_fraction(eps)
    a = _automaton(resolution, automaton)
    bracket = eta_minus(eta, eps / 4, resolution, a)
    target = bracket.t_b
    t_cur = (bracket.t_a + bracket.t_b) / 2 - eps
    steps = grid_points or 4 * n_max
    grid = [t_cur + (target - t_cur) * k / steps for k in range(1, steps + 1)]

    stages = []
    previous = None
    for t_next in grid:
        inner = prune_sublevel(a, t_next, INNER)
        comps = scc_decompose(inner).subhorseshoes
        if previous is not None:
            comps = [c for c in comps if set(previous.component) <= set(c)]
        chosen = None
        for comp in comps:
            dim = component_dimension(inner, comp, resolution)
            if previous is not None and not dim.lo > previous.dim.hi:
                continue
            max_f = max_f_over_component(inner, comp, resolution.refinement)
            if not (max_f.lo > t_cur and max_f.hi < t_next):
                continue
            if chosen is None or dim.hi > chosen[1].hi:
                chosen = (comp, dim, max_f)
        if chosen is None:
            continue
        comp, dim, max_f = chosen
        bullet = D_of_t(t_cur, resolution, a).dHi < dim.lo
        previous = FamilyStage(t_cur, t_next, comp, dim, max_f, bullet)
        stages.append(previous)
        logging.info("Family stage %d: t=%s, %d states, dim [%.6f, %.6f]"
                     % (len(stages), t_cur, len(comp), dim.lo, dim.hi))
        t_cur = t_next
        if len(stages) == n_max:
            break

    problems = []
    if len(stages) < n_max:
        problems.append("resolution separates %d of %d requested stages"
                        % (len(stages), n_max))
    uncertified = [n for n, stage in enumerate(stages)
                   if not stage.dimension_bullet]
    if uncertified:
        problems.append("dHi(t_n) < dim.lo is not certified at stages %s"
                        % ", ".join(map(str, uncertified)))
    diagnostic = "; ".join(problems) or None
    if diagnostic:
        logging.warning(diagnostic)
    union = stages[-1].component if stages else None
    return Family(stages, union, len(stages) <= 1, diagnostic)


# -- concatenation construction -----------------------------------------


ThetaResult = namedtuple('ThetaResult',
                         ['word', 'estimate', 'window_error', 'late_start',
                          'target'])


def _cycle_through(graph, state):
    """Shortest cycle through ``state``, as states from and back to it."""
    if graph.has_edge(state, state):
        return [state, state]
    best = None
    for v in sorted(graph.successors(state)):
        try:
            path = nx.shortest_path(graph, v, state)
        except nx.NetworkXNoPath:
            continue
        if best is None or len(path) < len(best):
            best = path
    if best is None:
        raise ConnectionNotFound("No cycle through %s" % (state,))
    return [state] + best


def _connector(a, source, targets):
    path = reach_witness(a, [source], targets)
    if path is None:
        raise ConnectionNotFound("No connector from %s" % (source,))
    return path


def geometric_gaps(stages, first=4, ratio=2):
    return [first * ratio ** n for n in range(stages)]


def theta_generate(a, base, family, stages, gaps):
    """Concatenate base blocks, connectors and spike orbits.

    Stage n contributes a walk of ``gaps[n]`` steps around a base cycle, a
    connector to the stage spike state (its state of largest f-range), the
    spike cycle repeated n + 1 times, and a connector back to the base.
    Returns the word and the certified range of f over its late windows.
    """
    if not family:
        raise ValueError("An empty family has no stages")
    if len(gaps) < stages or any(g2 <= g1 for g1, g2 in zip(gaps, gaps[1:])):
        raise ValueError("gaps must list %d strictly increasing lengths"
                         % stages)
    world = a.restrict(family[-1].component)
    base = sorted(tuple(s) for s in base)
    if not all(s in world for s in base):
        raise ValueError("The base subhorseshoe must lie in the final stage")
    base_cycle = _cycle_through(world.graph.subgraph(base), base[0])[:-1]

    path = [base[0]]
    late_start = 0
    for n in range(stages):
        stage = family[min(n, len(family) - 1)]
        members = set(stage.component)
        spike = max(sorted(members), key=lambda s: world.f_ranges[s].hi)
        spike_cycle = _cycle_through(world.graph.subgraph(members), spike)

        position = base_cycle.index(path[-1])
        for k in range(1, gaps[n] + 1):
            path.append(base_cycle[(position + k) % len(base_cycle)])
        path.extend(_connector(world, path[-1], [spike])[1:])
        if n == stages - 1:
            late_start = len(path) - 1
        for _ in range(n + 1):
            path.extend(spike_cycle[1:])
        path.extend(_connector(world, path[-1], base_cycle)[1:])

    word = path[0] + tuple(s[-1] for s in path[1:])
    late = path[late_start:]
    estimate = Interval(max(world.f_ranges[s].lo for s in late),
                        max(world.f_ranges[s].hi for s in late))
    logging.info("Theta word of length %d; late estimate [%s, %s]"
                 % (len(word), float(estimate.lo), float(estimate.hi)))
    last = family[min(stages, len(family)) - 1]
    return ThetaResult(word, estimate, world.max_range_width, late_start,
                       last.maxF)


# -- classification ------------------------------------------------------


Classification = namedtuple('Classification',
                            ['t', 'label', 'dimension_zero', 'd', 'per_eps'])


def _periodic_values(a, component, cycle_length):
    sub = a.graph.subgraph(component)
    values = []
    for cycle in nx.simple_cycles(sub, length_bound=cycle_length):
        period = tuple(s[-1] for s in cycle)
        values.append(markov_value(PeriodicSeq((), period)).value)
    return values


def classify_point(t, eps_grid, resolution, automaton=None, cycle_length=6):
    """Screen t against the sets J, F and Jtilde at the grid's scales.

    For each eps, outer-prune at t + eps/4 and look at components whose
    dimension may reach D(t). ``Jtilde-like`` when, at some eps, all of them
    certifiably have no Lagrange value in (t - eps/4, t + eps/4);
    ``J-like`` when at every eps a component certainly reaching D(t) has a
    certified Lagrange value there (max f or a periodic Markov value);
    ``F-like`` when a J-like point also has a certified gap on its left.
    """
    t = to_fraction(t)
    eps_grid = [to_fraction(e) for e in eps_grid]
    if not eps_grid or eps_grid != sorted(eps_grid, reverse=True):
        raise ValueError("eps_grid must be a non-empty decreasing list")
    a = _automaton(resolution, automaton)
    d = D_of_t(t, resolution, a)
    if d.dHi == 0:
        return Classification(t, INDETERMINATE, True, d, [])

    per_eps = []
    for eps in eps_grid:
        window = (t - eps / 4, t + eps / 4)
        pruned = prune_sublevel(a, window[1], OUTER)
        misses, meets, left_gap = True, False, True
        for comp in scc_decompose(pruned).subhorseshoes:
            dim = component_dimension(pruned, comp, resolution)
            possibly_high = dim.hi >= d.dLo
            certainly_high = dim.lo >= d.dHi
            if not possibly_high:
                continue
            max_f = max_f_over_component(pruned, comp, resolution.refinement)
            bottom = cycle_bottleneck(pruned, comp)
            if not (max_f.hi <= window[0] or bottom >= window[1]):
                misses = False
            if bottom < window[0]:
                left_gap = False
            if certainly_high and not meets:
                if window[0] < max_f.lo and max_f.hi < window[1]:
                    meets = True
                else:
                    meets = any(window[0] < v < window[1] for v in
                                _periodic_values(pruned, comp, cycle_length))
        per_eps.append({'eps': eps, 'misses': misses, 'meets': meets,
                        'left_gap': left_gap})

    if any(row['misses'] for row in per_eps):
        label = JTILDE_LIKE
    elif all(row['meets'] for row in per_eps):
        label = F_LIKE if any(row['left_gap'] for row in per_eps) \
            else J_LIKE
    else:
        label = INDETERMINATE
    return Classification(t, label, False, d, per_eps)
