"""Counting maps from two-component glued curves.

A glued count factors through the evaluation at the connecting node: each
side contributes its count with an extra marked-point condition whose
codimension is the side's own expected dimension, the two codimensions
summing to r plus the codimension of the node condition.  Tangency
conditions on a glued family either restrict to a component or degenerate to
the node landing on the tangency hyperplane, with multiplicity 2; expanding
this over all subsets produces the 2^l-weighted sums used everywhere below.

Sides are described by small tuples:
    ("R", d, extra)            rational component
    ("N", d, extra, k)         nodal component, codim-k condition on its node
    ("WA", d, extra, u, v)     rational with marked A: codim-u plus v special
                               tangents (the connecting node is a second mark)
    ("WNODE", d, extra, v)     rational with v special tangents at the
                               connecting node itself
`extra` is a constraint merged into whatever the split assigns to the side.
"""

from __future__ import annotations

from math import comb

from .constraints import Constraint, FamilyHandle, dim_nodal, dim_rational, partitions
from .gw import marked_incidence, rational_char
from .rationals import QQ, ZERO


def tangency_split():
    """Divisor coefficients for one tangency on a glued family.

    The tangency restricts to either component (coefficient 1 each) or the
    node lies on the hyperplane (coefficient 2).
    """
    return (1, 1, 2)


def merge(a: Constraint, b: Constraint) -> Constraint:
    if a.node_codim is not None and b.node_codim is not None:
        raise ValueError("merging two node conditions")
    node = a.node_codim if a.node_codim is not None else b.node_codim
    return Constraint(a.tangencies + b.tangencies, a.incidences + b.incidences, node)


def side_dim(side, r: int) -> int:
    """Expected dimension of the side's family with the connecting mark free."""
    kind, d, extra = side[0], side[1], side[2]
    conds = extra.conditions()
    if kind == "R":
        return dim_rational(r, d, 1) - conds
    if kind == "N":
        return dim_nodal(r, d, 1) - conds - side[3]
    if kind == "WA":
        return dim_rational(r, d, 2) - conds - side[3] - side[4]
    if kind == "WNODE":
        return dim_rational(r, d, 1) - conds - side[3]
    raise ValueError("unknown side kind %r" % kind)


def side_count(side, r: int, gamma: Constraint, e: int):
    """Count of the side with constraint gamma and codim-e node condition."""
    kind, d = side[0], side[1]
    if e < 0 or e > r:
        return ZERO
    if kind == "R":
        return marked_incidence(r, d, gamma, e)
    if kind == "N":
        from .nodal import nodal_count

        k = side[3]
        if e >= 2:
            return nodal_count(r, d, gamma.with_incidence(e), k)
        val = nodal_count(r, d, gamma, k)
        return d * val if (e == 1 and val) else val
    if kind == "WA":
        from .special import w_count

        u, v = side[3], side[4]
        if e >= 2:
            return w_count(r, d, gamma.with_incidence(e), u, v)
        val = w_count(r, d, gamma, u, v)
        return d * val if (e == 1 and val) else val
    if kind == "WNODE":
        from .special import w_count

        return w_count(r, d, gamma, e, side[3])
    raise ValueError("unknown side kind %r" % kind)


def fiber_product(side1, side2, r: int, node_codim: int):
    """Count of the glued family (no tangency redistribution): the product of
    the two side counts with complementary node conditions e1 + e2 = r + k."""
    g1, g2 = side1[2], side2[2]
    e1 = side_dim(side1, r)
    e2 = side_dim(side2, r)
    if e1 + e2 != r + node_codim:
        raise ValueError(
            "glued count is not zero-dimensional (e1=%d, e2=%d, r+k=%d)"
            % (e1, e2, r + node_codim)
        )
    if not (0 <= e1 <= r):
        return ZERO
    s1 = side_count(side1, r, g1, e1)
    if not s1:
        return ZERO
    s2 = side_count(side2, r, g2, e2)
    return s1 * s2


def expand_pair(r: int, side1, side2, delta: Constraint, base_node: int):
    """Glued count with the constraint delta distributed over the components.

    Sum over l tangencies degenerating to the node (weight 2^l C(t, l), node
    condition raised to base_node + l) and over all ordered splits of the
    rest, weighted by per-class binomials.
    """
    if delta.node_codim is not None:
        raise ValueError("pass node conditions through the sides or base_node")
    t = delta.tangencies
    total = ZERO
    raw1 = side_dim(side1, r)
    for l in range(0, t + 1):
        node = base_node + l
        if node > r:
            break
        dl = delta.drop_tangencies(l)
        coef = (1 << l) * comb(t, l)
        lo, hi = raw1 - r, raw1  # keep e1 = raw1 - conds(g1) within 0..r
        sub = ZERO
        for g1, g2, mult in partitions(dl, lo, hi):
            e1 = raw1 - g1.conditions()
            e2 = side_dim(side2, r) - g2.conditions()
            assert e1 + e2 == r + node, "glued dimension bookkeeping is off"
            s1 = side_count(side1, r, merge(side1[2], g1), e1)
            if not s1:
                continue
            s2 = side_count(side2, r, merge(side2[2], g2), e2)
            if s2:
                sub += mult * s1 * s2
        if sub:
            total += coef * sub
    return total


# ---------------------------------------------------------------------------
# Handle-based public operations.
# ---------------------------------------------------------------------------

def _handle_side(f: FamilyHandle):
    if f.kind == "R":
        if f.marked_codim or f.special_tangents:
            return ("WA", f.degree, f.constraint.bare(), f.marked_codim, f.special_tangents)
        return ("R", f.degree, f.constraint.bare())
    return ("N", f.degree, f.constraint.bare(), f.constraint.node_codim or 0)


def fiber_product_count(f1: FamilyHandle, f2: FamilyHandle, node_codim: int):
    """Product count of two families glued at a marked point on a codim-k
    subspace; each side absorbs a complementary marked condition."""
    if f1.r != f2.r:
        raise ValueError("families live in different ambient spaces")
    return fiber_product(_handle_side(f1), _handle_side(f2), f1.r, node_codim)


def expand_tangencies(f1: FamilyHandle, f2: FamilyHandle, delta: Constraint, node_codim: int):
    """Glued count of (f1 x f2) against delta, distributing tangencies."""
    if f1.r != f2.r:
        raise ValueError("families live in different ambient spaces")
    return expand_pair(f1.r, _handle_side(f1), _handle_side(f2), delta, node_codim)
