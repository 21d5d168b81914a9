#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_cli
--------

Tests for `lagrange_spectra.cli` module.
"""

import contextlib
import csv
import io
import json
import os
import shutil
import tempfile
import unittest
from unittest import mock

from lagrange_spectra import cli
from lagrange_spectra.config import CACHE_DIR_ENV


@contextlib.contextmanager
def make_temp_directory():
    temp_dir = tempfile.mkdtemp()
    yield temp_dir
    shutil.rmtree(temp_dir)


def run(*argv):
    """(exit status, stdout text) of one invocation."""
    stream = io.StringIO()
    with mock.patch.dict(os.environ, {CACHE_DIR_ENV: ''}):
        status = cli.run(list(argv), stream)
    return status, stream.getvalue()


PRUNE = ('prune', '--N', '2', '--window', '1', '--t', '3')


class TestCommands(unittest.TestCase):

    def test_markov_triples_csv(self):
        status, text = run('markov-triples', '--count', '9', '--output',
                           'csv')
        self.assertEqual(status, cli.EXIT_OK)
        rows = list(csv.reader(io.StringIO(text)))
        self.assertEqual(rows[0], ['x', 'y', 'z', 'value_num_isqrt_form',
                                   'decimal_60'])
        self.assertEqual([int(r[2]) for r in rows[1:]],
                         [1, 2, 5, 13, 29, 34, 89, 169, 194])
        self.assertEqual(rows[3][3], 'sqrt(221)/5')

    def test_markov_triples_crosscheck(self):
        status, text = run('markov-triples', '--count', '3', '--crosscheck')
        self.assertEqual(status, cli.EXIT_OK)
        report = json.loads(text)['details']['crosscheck']
        self.assertEqual([entry['z'] for entry in report], [1, 2, 5])
        self.assertTrue(all(entry['exact'] for entry in report))
        self.assertEqual(report[2]['witness'], '1,1,2,2')

    def test_prune_json(self):
        status, text = run(*PRUNE)
        self.assertEqual(status, cli.EXIT_OK)
        payload = json.loads(text)
        self.assertEqual(payload['kind'], 'prune')
        self.assertEqual(payload['details']['t'], '3/1')
        automaton = payload['details']['automaton']
        self.assertEqual(automaton['N'], 2)
        self.assertEqual(len(automaton['states']), len(payload['rows']))

    def test_dcurve_csv(self):
        status, text = run('dcurve', '--N', '2', '--window', '1', '--grid',
                           '2.9:3.1:0.1', '--output', 'csv')
        self.assertEqual(status, cli.EXIT_OK)
        rows = list(csv.reader(io.StringIO(text)))
        self.assertEqual(rows[0], ['t', 'dLo', 'dHi', 'window', 'r_max',
                                   'lLo', 'lHi'])
        self.assertEqual([r[0] for r in rows[1:]],
                         ['29/10', '3/1', '31/10'])

    def test_dim_on_an_alphabet(self):
        status, text = run('dim', '--alphabet', '1,2', '--window', '2')
        self.assertEqual(status, cli.EXIT_OK)
        rows = json.loads(text)['rows']
        self.assertEqual([r[0] for r in rows], [0, cli.PLANAR])
        self.assertAlmostEqual(float(rows[0][4]), 0.5313, delta=0.03)
        self.assertAlmostEqual(float(rows[1][4]), 1.0626, delta=0.06)
        self.assertEqual(rows[1][1], 32)

    def test_out_file(self):
        with make_temp_directory() as temp_dir:
            path = os.path.join(temp_dir, 'triples.csv')
            status, text = run('markov-triples', '--count', '2', '--output',
                               'csv', '--out', path)
            self.assertEqual(status, cli.EXIT_OK)
            self.assertEqual(text, '')
            with open(path) as f:
                self.assertTrue(f.readline().startswith('x,y,z'))


class TestExitStatus(unittest.TestCase):

    def test_unknown_subcommand(self):
        with mock.patch('sys.stderr', io.StringIO()):
            self.assertEqual(run('frobnicate')[0], cli.EXIT_USAGE)
            self.assertEqual(run()[0], cli.EXIT_USAGE)

    def test_bad_values(self):
        with mock.patch('sys.stderr', io.StringIO()):
            self.assertEqual(run('dcurve', '--grid', '3:2')[0],
                             cli.EXIT_USAGE)
            self.assertEqual(run('markov-triples', '--threads', '0')[0],
                             cli.EXIT_USAGE)
            self.assertEqual(run('sumset', '--alphabet', '0,x')[0],
                             cli.EXIT_USAGE)

    def test_budget(self):
        with mock.patch('sys.stderr', io.StringIO()):
            status, text = run('prune', '--N', '4', '--t', '3', '--budget',
                               '100')
        self.assertEqual(status, cli.EXIT_BUDGET)
        self.assertEqual(text, '')


class TestDeterminism(unittest.TestCase):

    def test_cache_and_threads_do_not_change_bytes(self):
        with make_temp_directory() as temp_dir:
            cached = PRUNE + ('--cache-dir', temp_dir)
            _, plain = run(*PRUNE)
            _, cold = run(*cached)
            _, warm = run(*cached)
            _, threaded = run(*(cached + ('--threads', '2',
                                          '--clear-cache')))
            self.assertEqual(plain, cold)
            self.assertEqual(cold, warm)
            self.assertEqual(cold, threaded)
            self.assertTrue(os.path.isdir(os.path.join(temp_dir, 'prune')))


if __name__ == '__main__':
    import sys
    sys.exit(unittest.main())
