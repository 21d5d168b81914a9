#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
lagrange_spectra.output
-----------------------

Payloads and their CSV/JSON rendering.

Every subcommand produces a payload: a JSON-ready dict with ``columns`` and
``rows`` (the CSV view) and free-form ``details`` (JSON only). Rationals are
written ``num/den`` and reals with 17 significant digits, so equal results
always render to identical bytes.
"""

import csv
import json

from lagrange_spectra.intervals import to_fraction

DECIMAL_DIGITS = 60


def format_rational(x):
    x = to_fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


def format_real(x):
    return "%.17g" % float(x)


def format_interval(interval):
    return [format_rational(interval.lo), format_rational(interval.hi)]


def format_word(word):
    return ",".join(str(s) for s in word)


def make_payload(kind, columns, rows, details=None):
    return {'kind': kind, 'columns': list(columns),
            'rows': [list(r) for r in rows], 'details': details or {}}


def render(payload, fmt, stream):
    if fmt == 'json':
        json.dump(payload, stream, indent=2, sort_keys=True)
        stream.write('\n')
    elif fmt == 'csv':
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(payload['columns'])
        for row in payload['rows']:
            writer.writerow(row)
    else:
        raise ValueError("Unknown output format %r" % (fmt,))


# -- per-result payloads ---------------------------------------------------


def estimate_row(label, estimate):
    return [label, estimate.method, format_real(estimate.lo),
            format_real(estimate.hi)]


def automaton_payload(a, decomposition, t, mode):
    """States with their f-ranges and owning subhorseshoe (-1 if none)."""
    owner = {}
    for i, comp in enumerate(decomposition.subhorseshoes):
        for s in comp:
            owner[s] = i
    transient = set(decomposition.transient_states)
    rows = []
    for s in a.states:
        lo, hi = format_interval(a.f_ranges[s])
        role = 'subhorseshoe' if s in owner else \
            'transient' if s in transient else 'orphan'
        rows.append([format_word(s), lo, hi, owner.get(s, -1), role])
    details = {
        't': format_rational(t),
        'mode': mode,
        'automaton': a.to_json_dict(),
        'subhorseshoes': [[list(s) for s in comp]
                          for comp in decomposition.subhorseshoes],
        'transientPairs': [list(p) for p in decomposition.transient_pairs],
    }
    return make_payload('prune', ['state', 'fLo', 'fHi', 'component', 'role'],
                        rows, details)


def dcurve_payload(points):
    rows = [[format_rational(p.t), format_real(p.dLo), format_real(p.dHi),
             p.window, p.r_max, format_real(p.lLo), format_real(p.lHi)]
            for p in points]
    return make_payload('dcurve', ['t', 'dLo', 'dHi', 'window', 'r_max',
                                   'lLo', 'lHi'], rows)


def eta_payload(bracket, side):
    rows = [[side, format_real(bracket.eta), format_rational(bracket.t_a),
             format_rational(bracket.t_b), bracket.indeterminate,
             bracket.degenerate]]
    details = {
        'd_a': [format_real(bracket.d_a.dLo), format_real(bracket.d_a.dHi)],
        'd_b': [format_real(bracket.d_b.dLo), format_real(bracket.d_b.dHi)],
    }
    return make_payload('eta', ['side', 'eta', 't_a', 't_b', 'indeterminate',
                                'degenerate'], rows, details)


def _path_length(path):
    return -1 if path is None else max(len(path) - 1, 0)


def connect_payload(verdicts):
    """``verdicts`` lists (i, j, ConnectionVerdict)."""
    rows = [[i, j, v.connected, _path_length(v.forward),
             _path_length(v.backward)] for i, j, v in verdicts]
    details = {'paths': [
        {'pair': [i, j],
         'forward': [format_word(s) for s in v.forward or []],
         'backward': [format_word(s) for s in v.backward or []]}
        for i, j, v in verdicts]}
    return make_payload('connect', ['i', 'j', 'connected', 'forward_length',
                                    'backward_length'], rows, details)


def family_payload(family):
    rows = []
    for n, stage in enumerate(family.stages):
        rows.append([n, format_rational(stage.t_n),
                     format_rational(stage.t_next), len(stage.component),
                     format_real(stage.dim.lo), format_real(stage.dim.hi),
                     format_rational(stage.maxF.lo),
                     format_rational(stage.maxF.hi), stage.dimension_bullet])
    details = {'degenerate': family.degenerate,
               'diagnostic': family.diagnostic,
               'union': [format_word(s) for s in family.union or []]}
    return make_payload('family', ['stage', 't_n', 't_next', 'states',
                                   'dimLo', 'dimHi', 'maxFLo', 'maxFHi',
                                   'dimension_bullet'], rows, details)


def theta_payload(result):
    rows = [[len(result.word), format_rational(result.estimate.lo),
             format_rational(result.estimate.hi),
             format_rational(result.window_error),
             format_rational(result.target.lo),
             format_rational(result.target.hi)]]
    details = {'word': format_word(result.word),
               'late_start': result.late_start}
    return make_payload('theta', ['length', 'lo', 'hi', 'window_error',
                                  'targetLo', 'targetHi'], rows, details)


def triples_payload(triples, crosscheck=None):
    """x, y, z, the exact point sqrt(9 - 4/z^2) and 60 decimal digits."""
    rows = []
    for triple in triples:
        value = triple.spectrum_point()
        rows.append([triple.x, triple.y, triple.z, str(value),
                     value.decimal(DECIMAL_DIGITS)])
    details = {}
    if crosscheck is not None:
        details['crosscheck'] = [
            {'z': entry.triple.z,
             'witness': format_word(entry.witness.period)
             if entry.witness is not None else None,
             'exact': entry.exact}
            for entry in crosscheck]
    return make_payload('markov-triples', ['x', 'y', 'z',
                                           'value_num_isqrt_form',
                                           'decimal_60'], rows, details)


def classification_payload(result):
    rows = [[format_rational(result.t), result.label, result.dimension_zero,
             format_real(result.d.dLo), format_real(result.d.dHi)]]
    details = {'per_eps': [
        {'eps': format_rational(row['eps']), 'misses': row['misses'],
         'meets': row['meets'], 'left_gap': row['left_gap']}
        for row in result.per_eps]}
    return make_payload('classify', ['t', 'label', 'dimension_zero', 'dLo',
                                     'dHi'], rows, details)
