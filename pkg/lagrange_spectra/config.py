#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
lagrange_spectra.config
-----------------------

Run configuration shared by every subcommand.
"""

from fractions import Fraction
import os

from lagrange_spectra.analysis import Resolution
from lagrange_spectra.dimension import PRESSURE
from lagrange_spectra.intervals import to_fraction
from lagrange_spectra.output import format_rational

CACHE_DIR_ENV = 'LAGRANGE_SPECTRA_CACHE'
OUTPUT_FORMATS = ('json', 'csv')

DEFAULT_N = 2
DEFAULT_WINDOW = 3
DEFAULT_R_MAX = 24
DEFAULT_TOL = Fraction(1, 10 ** 12)
DEFAULT_BUDGET = 300000


class RunConfig(object):
    """
    Holds the resolution, parallelism, cache and output settings of a run.
    """

    def __init__(self, N=DEFAULT_N, window=DEFAULT_WINDOW,
                 r_max=DEFAULT_R_MAX, tol=DEFAULT_TOL, threads=1,
                 cache_dir=None, output='json', budget=DEFAULT_BUDGET):
        tol = to_fraction(tol)
        for name, value in (('N', N), ('window', window), ('rmax', r_max),
                            ('tol', tol), ('threads', threads),
                            ('budget', budget)):
            if value <= 0:
                raise ValueError("--%s must be positive, got %s"
                                 % (name, value))
        if output not in OUTPUT_FORMATS:
            raise ValueError("--output must be one of %s"
                             % ", ".join(OUTPUT_FORMATS))
        self.N = N
        self.window = window
        self.r_max = r_max
        self.tol = tol
        self.threads = threads
        self.output = output
        self.budget = budget
        # an empty cache directory means no caching
        self.cache_dir = (cache_dir if cache_dir is not None
                          else os.environ.get(CACHE_DIR_ENV)) or None

    def resolution(self, method=PRESSURE, refinement=2):
        return Resolution(self.N, self.window, self.r_max, method,
                          float(self.tol), refinement, self.budget,
                          self.threads)

    def canonical(self):
        """Parameters that determine results, in a hashable normal form.

        Threads, output format and the cache location are left out: they
        never change a result.
        """
        return {
            'N': self.N,
            'window': self.window,
            'r_max': self.r_max,
            'tol': format_rational(self.tol),
            'budget': self.budget,
        }
