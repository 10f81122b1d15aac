"""Characteristic numbers with special tangent conditions.

w_count(r, d, delta, u, v) counts rational degree-d curves satisfying delta
with a marked point A on u general hyperplanes whose projective tangent line
at A meets v general codimension-2 subspaces.

For v = 1 the special tangent divisor rewrites (for d-fold covers of its
image the tangent direction is that of the image) as

    (2 - 2/d) L_A + (1/d^2) H + sum_j ((d-j)^2/d^2) K^{A,j}

with H a codim-2 incidence and K^{A,j} the boundary where A sits on a
degree-j component.  Squaring and cubing pick up excess contributions from
maps contracting the component of A that meets two others (the only excess
locus relevant for r <= 5): those are glued-pair counts with the node at A,
entering with weights (2j^2 - 2jd)/d^2 and a half at j = d - j, where the
component swap identifies pairs.

Any v up to 2r - 2 is alternatively the intersection number
T h^u e (h+k-e)^v against the class T of the two-marked family in the blowup
of P^r x P^r along the diagonal; the two routes agree wherever both apply,
and v >= r - 1 (beyond the excess-locus bookkeeping above) always takes the
blowup route.
"""

from __future__ import annotations

from .cache import CACHE
from .constraints import Constraint, DimensionError, dim_rational
from .gw import marked_incidence
from .rationals import QQ, ZERO
from .reducible import expand_pair


def w_count(r: int, d: int, delta: Constraint, u: int, v: int):
    if d < 1:
        raise ValueError("degree must be at least 1")
    if not 2 <= r <= 5:
        raise ValueError("supported ambient dimensions are 2..5")
    if delta.node_codim is not None:
        raise ValueError("special tangent counts carry no node condition")
    if v < 0 or u < 0:
        raise ValueError("negative condition count")
    if u > r or v > 2 * r - 2:
        return ZERO
    if any(c > r for c, _ in delta.incidences):
        return ZERO
    excess = delta.conditions() + u + v - dim_rational(r, d, 1)
    if excess > 0:
        return ZERO
    if excess < 0:
        raise DimensionError("under-determined count (dimension %d)" % -excess)
    if v == 0:
        return marked_incidence(r, d, delta, u)
    return CACHE.get_or_compute(
        ("w", r, d, delta.key, u, v), lambda: _w_dispatch(r, d, delta, u, v)
    )


def _w_dispatch(r, d, delta, u, v):
    if v >= r - 1:
        return w_high_count(r, d, delta, u, v)
    if v == 1:
        return _one_special(r, d, delta, u)
    if v == 2:
        return _two_special(r, d, delta, u)
    if v == 3:
        return _three_special(r, d, delta, u)
    raise AssertionError("v=%d with v < r-1 cannot occur for r <= 5" % v)


def _a_side_terms(r, d, delta, u, v_lower):
    """Boundary sum over the degree of the component carrying A."""
    total = ZERO
    for j in range(1, d):
        coef = QQ((d - j) ** 2, d * d)
        side_a = ("WA", j, Constraint(), u, v_lower)
        side_b = ("R", d - j, Constraint())
        total += coef * expand_pair(r, side_a, side_b, delta, 0)
    return total


def _contracted_pair(r, d, delta, u, v_on_side):
    """Excess terms: glued pairs whose node is A (with its u conditions).

    v_on_side places one special tangent on either component in turn; the
    swap at equal degrees makes the count a double cover, hence the half.
    """
    total = ZERO
    for j in range(1, d // 2 + 1):
        coef = QQ(2 * j * j - 2 * j * d, d * d)
        half = QQ(1, 2) if 2 * j == d else QQ(1)
        if v_on_side == 0:
            val = expand_pair(r, ("R", j, Constraint()), ("R", d - j, Constraint()), delta, u)
        else:
            val = expand_pair(r, ("WNODE", j, Constraint(), 1), ("R", d - j, Constraint()), delta, u)
            val += expand_pair(r, ("R", j, Constraint()), ("WNODE", d - j, Constraint(), 1), delta, u)
        total += coef * half * val
    return total


def _one_special(r, d, delta, u):
    val = QQ(2 * d - 2, d) * w_count(r, d, delta, u + 1, 0)
    val += QQ(1, d * d) * w_count(r, d, delta.with_incidence(2), u, 0)
    val += _a_side_terms(r, d, delta, u, 0)
    return val


def _two_special(r, d, delta, u):
    val = QQ(2 * d - 2, d) * w_count(r, d, delta, u + 1, 1)
    val += QQ(1, d * d) * w_count(r, d, delta.with_incidence(2), u, 1)
    val += _a_side_terms(r, d, delta, u, 1)
    val += _contracted_pair(r, d, delta, u, 0)
    return val


def _three_special(r, d, delta, u):
    val = QQ(2 * d - 2, d) * w_count(r, d, delta, u + 1, 2)
    val += QQ(1, d * d) * w_count(r, d, delta.with_incidence(2), u, 2)
    val += _a_side_terms(r, d, delta, u, 2)
    val += _contracted_pair(r, d, delta, u, 1)
    return val


def w_high_count(r: int, d: int, delta: Constraint, u: int, v: int):
    """Special tangent count as an intersection number in the diagonal
    blowup of P^r x P^r: T h^u e (h+k-e)^v against the two-marked family
    class T.  Valid for any v <= 2r-2; the only route beyond v = 3."""
    from .chow import gens, integrate
    from .rr2 import family_class

    if v > 2 * r - 2:
        return ZERO
    t_class = family_class(r, d, delta)
    if not t_class:
        return ZERO
    h, k, e = gens(r)
    cls = t_class * (h**u) * e * ((h + k - e) ** v)
    return integrate(cls)
