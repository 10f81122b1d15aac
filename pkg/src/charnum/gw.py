"""Counts of irreducible rational curves in P^r.

gw_incidence evaluates genus-zero incidence-only invariants by the
associativity (WDVV) recursion: two relation shapes are used, one that
consumes a codimension-2 insertion (every resulting invariant has one
marking fewer) and one that lowers the smallest codimension.  Together with
the divisor and string reductions they terminate on the lexicographic
measure (degree, markings, ascending codimension multiset), bottoming out at
the two-point degree-1 invariant.

rational_char adds tangency conditions: each tangency is traded for a
codimension-2 incidence with weight (d-1)/d plus boundary terms over
two-component curves of degrees (d1, d2), where removed tangencies become
node conditions with multiplicity 2 and ordered degree splits carry weight
d1*d2/(2d) (the half accounts for the component swap at equal degrees).
"""

from __future__ import annotations

from math import comb

from .cache import CACHE
from .constraints import Constraint, DimensionError, dim_rational, partitions
from .rationals import QQ, ZERO

_GW_MEMO = {}


def _eval(r, d, insertions):
    """Evaluate an invariant given an unsorted insertion list.

    Codimensions outside 0..r make the invariant vanish; codimension 0 is the
    fundamental class (string: zero in positive degree); codimension 1 is a
    divisor contributing a factor d.
    """
    mult = 1
    codims = []
    for c in insertions:
        if c < 0 or c > r:
            return ZERO
        if c == 0:
            return ZERO
        if c == 1:
            mult *= d
        else:
            codims.append(c)
    if mult == 0:
        return ZERO
    val = _gw(r, d, tuple(sorted(codims)))
    return mult * val if mult != 1 else val


def _gw(r, d, tup):
    n = len(tup)
    if n <= 2:
        return QQ(1) if (d == 1 and tup == (r, r)) else ZERO
    key = (r, d, tup)
    try:
        return _GW_MEMO[key]
    except KeyError:
        pass

    if tup[0] == 2:
        # shape 1: consume a codim-2 insertion; all terms lose one marking
        b, c = tup[-1], tup[-2]
        omega = tup[1:-2]
        val = d * _eval(r, d, omega + (b + 1, c))
        val += d * _eval(r, d, omega + (b, c + 1))
        val -= d * d * _eval(r, d, omega + (b + c,))
        val += _boundary(r, d, 1, 1, b, c, omega)
    else:
        # shape 2: lower the smallest codimension (>= 3)
        a = tup[0]
        b, c = tup[-1], tup[-2]
        omega = tup[1:-2]
        val = _eval(r, d, omega + (a - 1, b, c + 1))
        val += d * _eval(r, d, omega + (a + b - 1, c))
        val -= d * _eval(r, d, omega + (a - 1, b + c))
        val += _boundary(r, d, a - 1, 1, b, c, omega)

    _GW_MEMO[key] = val
    return val


def _msplits(omega):
    """Two-way splits of a sorted codim tuple with binomial multiplicities."""
    classes = []
    prev = None
    for c in omega:
        if c == prev:
            classes[-1][1] += 1
        else:
            classes.append([c, 1])
            prev = c

    def rec(i, part1, part2, mult):
        if i == len(classes):
            yield tuple(part1), tuple(part2), mult
            return
        c, n = classes[i]
        for j in range(n + 1):
            yield from rec(i + 1, part1 + [c] * j, part2 + [c] * (n - j), mult * comb(n, j))

    return list(rec(0, [], [], 1))


def _boundary(r, d, ea, eb, ec, ed_, omega):
    """Degree-splitting terms of the four-point relation (ea,eb | ec,ed)."""
    total = ZERO
    for part1, part2, mult in _msplits(omega):
        s1 = sum(x - 1 for x in part1)
        for d1 in range(1, d):
            d2 = d - d1
            dim1 = (r + 1) * d1 + r - 3
            # cross pairing (alpha gamma | beta delta)
            i = dim1 - (ea - 1) - (ec - 1) - s1 + 1
            if 1 <= i <= r - 1:
                g1 = _eval(r, d1, part1 + (ea, ec, i))
                if g1:
                    g2 = _eval(r, d2, part2 + (r - i, eb, ed_))
                    if g2:
                        total += mult * g1 * g2
            # straight pairing (alpha beta | gamma delta)
            i = dim1 - (ea - 1) - (eb - 1) - s1 + 1
            if 1 <= i <= r - 1:
                g1 = _eval(r, d1, part1 + (ea, eb, i))
                if g1:
                    g2 = _eval(r, d2, part2 + (r - i, ec, ed_))
                    if g2:
                        total -= mult * g1 * g2
    return total


def gw_incidence(r: int, d: int, codims) -> "QQ":
    """Rational degree-d curves in P^r with a marked point on each subspace.

    codims is a multiset of codimensions in 1..r (codim_i > r makes the
    condition empty and the count 0).  The count is zero-dimensional when
    sum(codim_i - 1) == (r+1)d + r - 3; an under-determined request raises.
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    if r < 2:
        raise ValueError("ambient dimension must be at least 2")
    codims = tuple(sorted(codims))
    if any(c < 1 for c in codims):
        raise ValueError("codimensions must be positive")
    if any(c > r for c in codims):
        return ZERO
    excess = sum(c - 1 for c in codims) - dim_rational(r, d)
    if excess > 0:
        return ZERO
    if excess < 0:
        raise DimensionError("under-determined incidence count (dimension %d)" % -excess)
    return CACHE.get_or_compute(("gw", r, d, codims), lambda: _eval(r, d, codims))


# ---------------------------------------------------------------------------
# Tangency conditions.
# ---------------------------------------------------------------------------

def tangency_divisor_terms(r: int, d: int):
    """Coefficients of the tangency divisor in incidence/boundary terms.

    Returns ("H", (d-1)/d) and (("K", d1, d2), d1*d2/(2*d)) over ordered
    degree splits; the halves at d1 = d2 merge into the usual j(d-j)/d
    weights for unordered splits.
    """
    out = [("H", QQ(d - 1, d))]
    for d1 in range(1, d):
        out.append((("K", d1, d - d1), QQ(d1 * (d - d1), 2 * d)))
    return out


def rational_char(r: int, d: int, delta: Constraint) -> "QQ":
    """Characteristic number of rational degree-d curves in P^r.

    delta may include tangencies; counts with expected dimension < 0 return
    0 and under-determined requests raise.
    """
    if d < 1:
        raise ValueError("degree must be at least 1 (no stable map family)")
    if delta.node_codim is not None:
        raise ValueError("rational counts carry no node condition")
    if any(c > r for c, n in delta.incidences):
        return ZERO
    excess = delta.conditions() - dim_rational(r, d)
    if excess > 0:
        return ZERO
    if excess < 0:
        raise DimensionError("under-determined count (dimension %d)" % -excess)
    if delta.tangencies == 0:
        return gw_incidence(r, d, delta.codims())
    return CACHE.get_or_compute(
        ("rat", r, d, delta.key), lambda: _rational_char_tangent(r, d, delta)
    )


def _rational_char_tangent(r, d, delta):
    dpp = delta.drop_tangencies(1)
    val = QQ(d - 1, d) * rational_char(r, d, dpp.with_incidence(2))
    for d1 in range(1, d):
        d2 = d - d1
        val += QQ(d1 * d2, 2 * d) * _pair_boundary(r, d1, d2, dpp)
    return val


def _pair_boundary(r, d1, d2, dpp):
    """Two-component boundary: tangencies move to the node (weight 2 each),
    remaining constraints distribute over the components."""
    return CACHE.get_or_compute(
        ("rrb", r, d1, d2, dpp.key), lambda: _pair_boundary_calc(r, d1, d2, dpp)
    )


def _pair_boundary_calc(r, d1, d2, dpp):
    total = ZERO
    t = dpp.tangencies
    for l in range(0, t + 1):
        dl = dpp.drop_tangencies(l)
        coef = (1 << l) * comb(t, l)
        lo = dim_rational(r, d1, 1) - r
        hi = dim_rational(r, d1, 1)
        sub = ZERO
        for g1, g2, mult in partitions(dl, lo, hi):
            e1 = dim_rational(r, d1, 1) - g1.conditions()
            e2 = dim_rational(r, d2, 1) - g2.conditions()
            assert e1 + e2 == r + l, "boundary dimension bookkeeping is off"
            s1 = marked_incidence(r, d1, g1, e1)
            if not s1:
                continue
            s2 = marked_incidence(r, d2, g2, e2)
            if s2:
                sub += mult * s1 * s2
        total += coef * sub
    return total


def marked_incidence(r: int, d: int, delta: Constraint, u: int) -> "QQ":
    """Count with one marked point on u general hyperplanes (codim-u).

    For u >= 2 the marked point sits at the unique intersection with a
    general codim-u subspace, so the count equals the unmarked one with an
    extra incidence; u = 1 contributes a factor d; u = 0 is a free marking.
    """
    if u < 0 or u > r:
        return ZERO
    if u >= 2:
        return rational_char(r, d, delta.with_incidence(u))
    val = rational_char(r, d, delta)
    return d * val if (u == 1 and val) else val


def marked_special_interface(r: int, d: int, delta: Constraint, u: int, v: int = 0) -> "QQ":
    """Marked-point counts; v > 0 dispatches to the special-tangent engine."""
    if v:
        from .special import w_count

        return w_count(r, d, delta, u, v)
    return marked_incidence(r, d, delta, u)
