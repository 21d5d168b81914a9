#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# Sphinx configuration for the lagrange_spectra documentation.

import os
import sys

# The package is documented from the checkout, not an installed copy.
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import lagrange_spectra  # noqa: E402

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode']
autodoc_member_order = 'bysource'

source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = ['_build']

project = u'Lagrange Spectra'
copyright = u'2026, Max Harper'
version = lagrange_spectra.__version__
release = lagrange_spectra.__version__

pygments_style = 'sphinx'
html_theme = 'default'
htmlhelp_basename = 'lagrange_spectradoc'

man_pages = [
    ('index', 'lagrange_spectra', u'Lagrange Spectra Documentation',
     [u'Max Harper'], 1),
]
