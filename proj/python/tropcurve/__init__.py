"""Exact tropical curves and plane tropical geometry.

Rationals are returned as ``fractions.Fraction``; inputs may be ints, Fractions or "p/q"
strings. ``None`` is the tropical zero (-inf) for scalars and germs.
"""

from ._core import (
    Complex,
    Curve,
    Function,
    ParseError,
    TropError,
    germ_add,
    germ_mul,
    intersect,
    module_degree,
    realize,
    run_cli,
    run_suite,
    trop_add,
    trop_mul,
    verify_rn_generators,
)

__all__ = [
    "Complex",
    "Curve",
    "Function",
    "ParseError",
    "TropError",
    "germ_add",
    "germ_mul",
    "intersect",
    "module_degree",
    "realize",
    "run_cli",
    "run_suite",
    "trop_add",
    "trop_mul",
    "verify_rn_generators",
]
