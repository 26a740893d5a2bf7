"""Figure rendering for the quadrature experiment CSV datasets.

Strictly one-way: this package reads the CSVs written by the experiment
runner and produces image files; nothing here feeds back into any
computation.
"""

from .render import EXPECTED_HEADERS, FIGURE_KINDS, FigureSpec, SchemaError, render

__version__ = "0.1.0"
