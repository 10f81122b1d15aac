"""Exact characteristic numbers of curves in projective space P^r, 2 <= r <= 5.

Families covered: rational curves (incidence and tangency conditions),
rational curves with special tangent conditions at a marked point, pairs of
rational curves meeting at two nodes, rational nodal curves with a condition
on the node, and elliptic curves with fixed generic j-invariant.  All
arithmetic is exact rational.
"""

from .cache import configure_cache
from .chow import BlowupClass, format_class, gens, integrate, monomial_basis, parse_class
from .constraints import (
    Constraint,
    DimensionError,
    FamilyHandle,
    compare,
    expected_dimension,
    normalize_hyperplanes,
    parse_constraint,
    partitions,
)
from .gw import gw_incidence, marked_incidence, marked_special_interface, rational_char

__version__ = "0.1.0"

__all__ = [
    "BlowupClass",
    "Constraint",
    "DimensionError",
    "FamilyHandle",
    "compare",
    "configure_cache",
    "expected_dimension",
    "format_class",
    "gens",
    "gw_incidence",
    "integrate",
    "marked_incidence",
    "marked_special_interface",
    "monomial_basis",
    "normalize_hyperplanes",
    "parse_class",
    "parse_constraint",
    "partitions",
    "rational_char",
]
