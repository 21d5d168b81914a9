#!/usr/bin/env python
# -*- coding: utf-8 -*-


try:
    from setuptools import setup
except ImportError:
    from distutils.core import setup


with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read().replace('.. :changelog:', '')

requirements = [
    'numpy>=1.20',
    'scipy>=1.7',
    'networkx>=3.1',
    'sympy>=1.9',
    'mpmath>=1.2',
]

test_requirements = [
    # unittest only
]

# https://pypi.python.org/pypi?%3Aaction=list_classifiers
setup(
    name='lagrange-spectra',
    version='0.1.0',
    description="Markov and Lagrange spectra, sublevel subshifts and their "
                "dimensions over bounded continued fractions.",
    long_description=readme + '\n\n' + history,
    author="Max Harper",
    author_email='maxharp3r@gmail.com',
    url='https://github.com/maxharp3r/lagrange-spectra',
    packages=[
        'lagrange_spectra',
    ],
    package_dir={'lagrange_spectra': 'lagrange_spectra'},
    entry_points={
        'console_scripts': [
            'lagrange-spectra = lagrange_spectra.cli:main',
        ]
    },
    include_package_data=True,
    install_requires=requirements,
    python_requires='>=3.8',
    license="MIT License",
    zip_safe=False,
    keywords='continued fractions lagrange markov spectrum hausdorff '
             'dimension subshift',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    test_suite='tests',
    tests_require=test_requirements
)
