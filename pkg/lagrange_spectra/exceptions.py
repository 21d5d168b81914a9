#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
lagrange_spectra.exceptions
---------------------------

Error types shared by the computational modules.
"""


class BudgetExceeded(RuntimeError):
    """A state or word enumeration outgrew its configured budget.

    ``partial`` holds whatever was computed before the budget ran out
    (for covering counts, the per-depth table reached so far).
    """

    def __init__(self, message, partial=None):
        super(BudgetExceeded, self).__init__(message)
        self.partial = partial


class NotStronglyConnected(ValueError):
    """A solver that needs an irreducible automaton was handed a reducible
    one. Decompose first."""


class ConnectionNotFound(RuntimeError):
    """No connecting word exists between two parts of an automaton."""
