"""Exact Chow-ring models, logarithmic Chern classes and Riemann-Hurwitz
verification for the coherent Euler characteristic.

All numeric results are exact rationals rendered as strings; feed them to
fractions.Fraction for arithmetic.
"""

try:
    from ._logeuler import *  # noqa: F401,F403
    from ._logeuler import __doc__ as _core_doc  # noqa: F401
except ImportError:  # build-tree layout: the extension sits on sys.path
    from _logeuler import *  # noqa: F401,F403

__version__ = "0.1.0"
