#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
lagrange_spectra.cli
--------------------

Handles command line arguments.

Example::

    lagrange-spectra markov-triples --count 9 --output csv
    lagrange-spectra dcurve --N 4 --grid 3.0:5.7:0.1 --output csv
    lagrange-spectra -v dim --alphabet 1,2 --method both

Exit status is 0 on success, 1 on usage or validation errors and 2 when a
budget is exhausted or the resolution cannot produce a required witness.
"""

import argparse
import logging
import os
import sys

from lagrange_spectra import __version__
from lagrange_spectra.analysis import connect_check, connects_with_ones, \
    classify_point, d_curve, eta_minus, eta_plus, full_shift, \
    geometric_gaps, increasing_family, parse_grid, theta_generate
from lagrange_spectra.cache import cache_get_or_compute, clear_cache
from lagrange_spectra.config import CACHE_DIR_ENV, RunConfig
from lagrange_spectra.continued_fractions import max_f_bound
from lagrange_spectra.dimension import BOXCOUNT, PRESSURE, \
    DEFAULT_WORD_BUDGET, alphabet_automaton, make_estimator, \
    planar_dimension, sumset_boxdim
from lagrange_spectra.exceptions import BudgetExceeded, ConnectionNotFound
from lagrange_spectra.intervals import to_fraction
from lagrange_spectra.output import automaton_payload, \
    classification_payload, connect_payload, dcurve_payload, eta_payload, \
    estimate_row, family_payload, format_rational, format_real, \
    make_payload, render, theta_payload, triples_payload
from lagrange_spectra.spectra import low_spectrum_crosscheck, markov_triples
from lagrange_spectra.subshift import OUTER, PRUNE_MODES, prune_sublevel, \
    scc_decompose

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2

BOTH = 'both'
PLANAR = 'planar'


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors reported as exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '%s: error: %s\n' % (self.prog, message))


def _parse_alphabet(text):
    try:
        alphabet = sorted(set(int(b) for b in text.replace(',', ' ').split()))
    except ValueError:
        raise ValueError("An alphabet is a comma-separated list of positive "
                         "integers, got %r" % text)
    if not alphabet or alphabet[0] < 1:
        raise ValueError("An alphabet is a comma-separated list of positive "
                         "integers, got %r" % text)
    return alphabet


def _parse_eps_list(text):
    return sorted((to_fraction(e) for e in text.split(',')), reverse=True)


def _warn_beyond_model(config, t):
    if to_fraction(t) >= max_f_bound(config.N):
        logging.warning("t=%s is at or beyond max f = sqrt(%d) of the model "
                        "with N=%d" % (t, config.N ** 2 + 4 * config.N,
                                       config.N))


def _model(config):
    return full_shift(config.N, config.window, config.budget, config.threads)


# -- subcommands -----------------------------------------------------------
#
# Each returns (params, compute): the cache parameters and a thunk building
# the payload.


def _dim(args, config):
    methods = [BOXCOUNT, PRESSURE] if args.method == BOTH else [args.method]
    alphabet = _parse_alphabet(args.alphabet) if args.alphabet else None
    t = to_fraction(args.t) if args.t is not None else None
    params = dict(config.canonical(), alphabet=alphabet, method=args.method,
                  mode=args.mode, diagnostics=args.diagnostics,
                  t=format_rational(t) if t is not None else None)

    def compute():
        if alphabet is not None:
            size = len(alphabet) ** (2 * config.window + 1)
            if size > config.budget:
                raise BudgetExceeded("Alphabet automaton has %d states, over "
                                     "the budget of %d"
                                     % (size, config.budget))
            a = alphabet_automaton(alphabet, config.window)
        else:
            a = _model(config)
        if t is not None:
            _warn_beyond_model(config, t)
            a = prune_sublevel(a, t, args.mode)
        decomposition = scc_decompose(a)
        components = decomposition.subhorseshoes
        rows, trace = [], []
        for method in methods:
            estimator = make_estimator(method, config.r_max,
                                       float(config.tol), DEFAULT_WORD_BUDGET)
            planar, unstable = planar_dimension(a, estimator, decomposition)
            for i, (comp, estimate) in enumerate(zip(components, unstable)):
                rows.append([i, len(comp), method, format_real(estimate.lo),
                             format_real(estimate.hi)])
                for entry in estimate.diagnostics:
                    trace.append([i, method] + [
                        '' if v is None else format_real(v) for v in entry])
            rows.append([PLANAR, a.n_states, method,
                         format_real(planar.lo), format_real(planar.hi)])
        if args.diagnostics:
            return make_payload('dim-diagnostics',
                                ['component', 'method', 'step', 'a', 'b',
                                 'c'], [r + [''] * (6 - len(r))
                                        for r in trace])
        return make_payload('dim', ['component', 'states', 'method', 'lo',
                                    'hi'], rows)
    return params, compute


def _prune(args, config):
    t = to_fraction(args.t)
    params = dict(config.canonical(), t=format_rational(t), mode=args.mode)

    def compute():
        _warn_beyond_model(config, t)
        pruned = prune_sublevel(_model(config), t, args.mode)
        return automaton_payload(pruned, scc_decompose(pruned), t, args.mode)
    return params, compute


def _dcurve(args, config):
    grid = parse_grid(args.grid)
    params = dict(config.canonical(), method=args.method,
                  grid=[format_rational(t) for t in grid])

    def compute():
        resolution = config.resolution(args.method)
        return dcurve_payload(d_curve(grid, resolution, _model(config)))
    return params, compute


def _eta(args, config):
    eta = float(args.eta)
    tol_t = to_fraction(args.tol_t)
    side = 'plus' if args.plus else 'minus'
    params = dict(config.canonical(), method=args.method, side=side,
                  eta=format_real(eta), tol_t=format_rational(tol_t))

    def compute():
        inverse = eta_plus if args.plus else eta_minus
        bracket = inverse(eta, tol_t, config.resolution(args.method),
                          _model(config))
        return eta_payload(bracket, side)
    return params, compute


def _connect(args, config):
    t, eps = to_fraction(args.t), to_fraction(args.eps)
    params = dict(config.canonical(), t=format_rational(t),
                  eps=format_rational(eps))

    def compute():
        a = _model(config)
        components = scc_decompose(prune_sublevel(a, t, OUTER)).subhorseshoes
        verdicts = []
        for i in range(len(components)):
            for j in range(i + 1, len(components)):
                verdicts.append((i, j, connect_check(
                    a, components[i], components[j], t, eps)))
        payload = connect_payload(verdicts)
        payload['details']['withOnes'] = [
            [i, joined] for i, joined in connects_with_ones(a, t, eps)]
        return payload
    return params, compute


def _family_params(args, config):
    return dict(config.canonical(), method=args.method,
                eta=format_real(float(args.eta)),
                eps=format_rational(to_fraction(args.eps)),
                stages=args.stages)


def _family(args, config):
    def compute():
        family = increasing_family(float(args.eta), to_fraction(args.eps),
                                   args.stages,
                                   config.resolution(args.method),
                                   automaton=_model(config))
        return family_payload(family)
    return _family_params(args, config), compute


def _theta_demo(args, config):
    params = dict(_family_params(args, config), gap=args.gap)

    def compute():
        a = _model(config)
        family = increasing_family(float(args.eta), to_fraction(args.eps),
                                   args.stages,
                                   config.resolution(args.method),
                                   automaton=a)
        if not family.stages:
            raise ConnectionNotFound("No family stage at this resolution: %s"
                                     % family.diagnostic)
        gaps = geometric_gaps(args.stages, first=args.gap)
        result = theta_generate(a, family.stages[0].component, family.stages,
                                args.stages, gaps)
        return theta_payload(result)
    return params, compute


def _markov_triples(args, config):
    params = dict(config.canonical(), count=args.count,
                  crosscheck=args.crosscheck, max_period=args.max_period)

    def compute():
        crosscheck = None
        if args.crosscheck:
            crosscheck = low_spectrum_crosscheck(args.count, args.max_period,
                                                 config.tol)
        return triples_payload(markov_triples(args.count), crosscheck)
    return params, compute


def _sumset(args, config):
    first = _parse_alphabet(args.alphabet)
    second = _parse_alphabet(args.alphabet2) if args.alphabet2 else first
    params = dict(config.canonical(), alphabet=first, alphabet2=second,
                  depth=args.depth)

    def compute():
        estimate = sumset_boxdim(first, second, args.depth,
                                 DEFAULT_WORD_BUDGET)
        label = "%s+%s" % (",".join(map(str, first)),
                           ",".join(map(str, second)))
        return make_payload('sumset', ['label', 'method', 'lo', 'hi'],
                            [estimate_row(label, estimate)])
    return params, compute


def _classify(args, config):
    t = to_fraction(args.t)
    eps_grid = _parse_eps_list(args.eps)
    params = dict(config.canonical(), method=args.method,
                  t=format_rational(t),
                  eps=[format_rational(e) for e in eps_grid],
                  cycle_length=args.cycle_length)

    def compute():
        result = classify_point(t, eps_grid, config.resolution(args.method),
                                _model(config), args.cycle_length)
        return classification_payload(result)
    return params, compute


COMMANDS = {
    'dim': _dim,
    'prune': _prune,
    'dcurve': _dcurve,
    'eta-minus': _eta,
    'connect': _connect,
    'family': _family,
    'theta-demo': _theta_demo,
    'markov-triples': _markov_triples,
    'sumset': _sumset,
    'classify': _classify,
}


def _common_flags():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--N', dest='N', type=int, default=2,
                        help='Alphabet bound of the model (default 2)')
    common.add_argument('--window', dest='window', type=int, default=3,
                        help='Half-width of automaton states (default 3)')
    common.add_argument('--rmax', dest='r_max', type=int, default=24,
                        help='Deepest covering scale e**-rmax (default 24)')
    common.add_argument('--tol', dest='tol', default='1/1000000000000',
                        help='Enclosure and bisection tolerance')
    common.add_argument('--threads', dest='threads', type=int, default=1,
                        help='Worker threads; results do not depend on it')
    common.add_argument('--cache-dir', dest='cache_dir',
                        help='Result cache directory (default: $%s)'
                             % CACHE_DIR_ENV)
    common.add_argument('--clear-cache', dest='clear_cache',
                        action='store_true',
                        help='Drop cached entries of this subcommand first')
    common.add_argument('--output', dest='output', default='json',
                        choices=('json', 'csv'), help='Output format')
    common.add_argument('--out', dest='out',
                        help='Write to this file instead of stdout')
    common.add_argument('--budget', dest='budget', type=int, default=300000,
                        help='Maximum number of automaton states')
    common.add_argument('-v', '--verbose', dest='verbose',
                        action='store_true',
                        help='Print info messages to stderr')
    return common


def _method_flag(parser, choices=(PRESSURE, BOXCOUNT)):
    parser.add_argument('--method', dest='method', default=PRESSURE,
                        choices=choices, help='Dimension estimator')


def build_parser():
    parser = ArgumentParser(
        prog='lagrange-spectra',
        description='Markov and Lagrange spectra over bounded continued '
                    'fractions.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    sub = parser.add_subparsers(dest='command', metavar='subcommand')
    sub.required = True
    common = [_common_flags()]

    p = sub.add_parser('dim', parents=common,
                       help='Dimension brackets of subhorseshoes')
    p.add_argument('--alphabet', help='Use the full shift on this alphabet')
    p.add_argument('--t', help='Prune at this level first')
    p.add_argument('--mode', default=OUTER, choices=PRUNE_MODES)
    p.add_argument('--diagnostics', action='store_true',
                   help='Emit count tables and bisection traces instead')
    _method_flag(p, (PRESSURE, BOXCOUNT, BOTH))

    p = sub.add_parser('prune', parents=common,
                       help='Sublevel automaton and its decomposition')
    p.add_argument('--t', required=True)
    p.add_argument('--mode', default=OUTER, choices=PRUNE_MODES)

    p = sub.add_parser('dcurve', parents=common, help='Brackets of D(t)')
    p.add_argument('--grid', required=True, help='start:stop:step')
    _method_flag(p)

    p = sub.add_parser('eta-minus', parents=common,
                       help='Bracket of min{t : D(t) = eta}')
    p.add_argument('--eta', required=True)
    p.add_argument('--tol-t', dest='tol_t', default='1/20',
                   help='Width of the t bracket (default 1/20)')
    p.add_argument('--plus', action='store_true',
                   help='Bracket max{t : D(t) = eta} instead')
    _method_flag(p)

    p = sub.add_parser('connect', parents=common,
                       help='Connection verdicts between subhorseshoes')
    p.add_argument('--t', required=True)
    p.add_argument('--eps', required=True)

    for name, text in (('family', 'Increasing family of subhorseshoes'),
                       ('theta-demo', 'Concatenation word for a family')):
        p = sub.add_parser(name, parents=common, help=text)
        p.add_argument('--eta', required=True)
        p.add_argument('--eps', required=True)
        p.add_argument('--stages', type=int, default=2)
        _method_flag(p)
    p.add_argument('--gap', type=int, default=4,
                   help='First base gap; later gaps double')

    p = sub.add_parser('markov-triples', parents=common,
                       help='Markov triples and the spectrum below 3')
    p.add_argument('--count', type=int, default=9)
    p.add_argument('--crosscheck', action='store_true',
                   help='Match each point with a periodic witness')
    p.add_argument('--max-period', dest='max_period', type=int, default=8)

    p = sub.add_parser('sumset', parents=common,
                       help='Box dimension of a sum of Cantor sets')
    p.add_argument('--alphabet', required=True)
    p.add_argument('--alphabet2')
    p.add_argument('--depth', type=int, default=12)

    p = sub.add_parser('classify', parents=common,
                       help='Screen t against J, F and Jtilde')
    p.add_argument('--t', required=True)
    p.add_argument('--eps', required=True,
                   help='Comma-separated scales, e.g. 1/5,1/10')
    p.add_argument('--cycle-length', dest='cycle_length', type=int,
                   default=6)
    _method_flag(p)
    return parser


def _write(payload, args, stream):
    if args.out:
        with open(args.out, 'w') as f:
            render(payload, args.output, f)
        logging.info("Wrote %s" % os.path.abspath(args.out))
    else:
        render(payload, args.output, stream)


def run(argv=None, stream=None):
    """Parse ``argv``, run one subcommand and return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    # logging
    log_level = logging.INFO if args.verbose else logging.WARN
    logging.basicConfig(stream=sys.stderr, level=log_level,
                        format='%(message)s')

    try:
        config = RunConfig(args.N, args.window, args.r_max, args.tol,
                           args.threads, args.cache_dir, args.output,
                           args.budget)
        if args.clear_cache and config.cache_dir:
            clear_cache(config.cache_dir, args.command)
        params, compute = COMMANDS[args.command](args, config)
        payload = cache_get_or_compute(config.cache_dir, args.command,
                                       params, compute)
        _write(payload, args, stream or sys.stdout)
    except BudgetExceeded as e:
        logging.error("Budget exceeded: %s" % e)
        return EXIT_BUDGET
    except ConnectionNotFound as e:
        logging.error("Resolution too coarse: %s" % e)
        return EXIT_BUDGET
    except ValueError as e:
        logging.error("Error: %s" % e)
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
