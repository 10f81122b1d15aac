"""Rational nodal curves with a condition on the node, and elliptic curves
with fixed generic j-invariant.

Counts use the unordered-node convention (a nodal curve with its node on the
required subspace counts once, not once per labeling of the two preimages);
all recursion coefficients below are stated in that convention.

Incidence-only counts (d >= 3) satisfy a recursion obtained by comparing two
equivalent boundary divisors on the moduli of maps with marked constraint
points: pick the stored element u of smallest codimension, two further
elements s and t, and replace u by a general hyperplane p and a subspace q
with p cap q = u.  Degenerations sort into nodal-times-rational glued pairs,
two-nodal pairs, and three same-degree terms whose constraints are strictly
smaller in the termination order.

Tangency conditions reduce exactly as for irreducible rational curves, with
glued-pair boundaries in which one component retains the node: ordered
degree splits weigh d1*d2/d for nodal-times-rational pairs and d1*d2/(2d)
for two-nodal pairs.

Degree 2 is the base case: its nodal maps are double covers of lines, where
a hyperplane through a branch point counts as a tangency.  With t >= 2
tangencies, incidences I and a codim-k node condition the count is

    2^(2r - t - k) * sum over branch assignments of  #lines,

the sum running over partitions of the t tangencies into the two branch
points (sizes n1 + n2 = t, n_i <= r, C(t, n1) assignments, halved when
n1 = n2) and #lines the count of lines meeting I, a codim-n1 and codim-n2
subspace (the forced branch points) and a codim-k subspace (the node image).
Everything else about degree <= 2 vanishes: smooth conics have no node.
"""

from __future__ import annotations

from math import comb

from .cache import CACHE
from .constraints import Constraint, DimensionError, compare, dim_nodal, dim_rational, partitions
from .gw import gw_incidence, marked_incidence
from .rationals import QQ, ZERO, half_pow
from .reducible import expand_pair, merge
from .rr2 import rr2_count, rr2_count_with_tangency


def nodal_count(r: int, d: int, delta: Constraint, k: int = None):
    """Characteristic number of degree-d rational nodal curves in P^r with
    the node on a general codim-k subspace (k = 0 or None: no condition)."""
    if k is None:
        k = delta.node_codim or 0
        delta = delta.bare()
    elif delta.node_codim is not None:
        raise ValueError("node condition given twice")
    if k < 0:
        raise ValueError("negative node condition")
    if not 2 <= r <= 5:
        raise ValueError("supported ambient dimensions are 2..5")
    if d < 1:
        raise ValueError("degree must be at least 1")
    if k > r or any(c > r for c, _ in delta.incidences):
        return ZERO
    excess = delta.conditions() + k - dim_nodal(r, d)
    if excess > 0:
        return ZERO
    if excess < 0:
        raise DimensionError("under-determined nodal count (dimension %d)" % -excess)
    if d == 1:
        return ZERO
    return CACHE.get_or_compute(
        ("nod", r, d, delta.key, k), lambda: _nodal_calc(r, d, delta, k)
    )


def _nodal_calc(r, d, delta, k):
    if d == 2:
        return nodal_degree2_base(r, delta, k)
    if delta.tangencies:
        return _tangency_step(r, d, delta, k)
    return _incidence_recursion(r, d, delta, k)


def nodal_incidence(r: int, d: int, delta: Constraint, k: int = 0):
    if delta.tangencies:
        raise ValueError("tangencies present; use nodal_char")
    return nodal_count(r, d, delta, k)


def nodal_char(r: int, d: int, delta: Constraint, k: int = 0):
    return nodal_count(r, d, delta, k)


def nodal_degree2_base(r: int, delta: Constraint, k: int):
    """Double covers of lines; see the module docstring for the formula."""
    t = delta.tangencies
    if k < 1 or t < 2:
        return ZERO
    total = ZERO
    base = delta.codims()
    for n1 in range(1, t // 2 + 1):
        n2 = t - n1
        if n2 > r:
            continue
        ways = QQ(comb(t, n1), 2 if n1 == n2 else 1)
        lines = gw_incidence(r, 1, base + (n1, n2, k))
        if lines:
            total += ways * lines
    return half_pow(2 * r - t - k) * total


def marked_nodal(r: int, d: int, delta: Constraint, k: int, e: int):
    """Nodal count with an extra marked point on a codim-e subspace."""
    if e < 0 or e > r:
        return ZERO
    if e >= 2:
        return nodal_count(r, d, delta.with_incidence(e), k)
    val = nodal_count(r, d, delta, k)
    return d * val if (e == 1 and val) else val


# ---------------------------------------------------------------------------
# Tangency reduction (d >= 3).
# ---------------------------------------------------------------------------

def _tangency_step(r, d, delta, k):
    dpp = delta.drop_tangencies(1)
    val = QQ(d - 1, d) * nodal_count(r, d, dpp.with_incidence(2), k)
    for d1 in range(1, d):
        d2 = d - d1
        nr = expand_pair(r, ("N", d1, Constraint(), k), ("R", d2, Constraint()), dpp, 0)
        if nr:
            val += QQ(d1 * d2, d) * nr
        rr = rr2_count_with_tangency(r, d1, d2, dpp, k, 0)
        if rr:
            val += QQ(d1 * d2, 2 * d) * rr
    return val


# ---------------------------------------------------------------------------
# Incidence-only recursion (d >= 3).
# ---------------------------------------------------------------------------

def _pick_ust(delta, choice):
    elems = list(delta.codims())
    if len(elems) < 3:
        raise ValueError("too few elements for the recursion step: %s" % (delta,))
    u = elems.pop(0)  # smallest codimension = largest subspace
    if choice == 0:
        s, t = elems[0], elems[1]
    else:
        s, t = elems[-2], elems[-1]
    return u, s, t


def _with_added(base: Constraint, added, d: int, r: int):
    """Add decoration elements; hyperplanes contribute a factor d, anything
    of codimension beyond r is empty (the term vanishes)."""
    mult = 1
    out = base
    for c in added:
        if c > r:
            return None, 0
        if c == 1:
            mult *= d
        else:
            out = out.with_incidence(c)
    return out, mult


def _incidence_recursion(r, d, delta, k, choice=0):
    u, s, t = _pick_ust(delta, choice)
    tilde = delta.without_incidence(u).without_incidence(s).without_incidence(t)
    p, q = 1, u - 1

    val = ZERO
    # same-degree terms: one decoration pair collapses to its intersection
    for added, sign in (
        ((q, p + s, t), 1),
        ((p, q + t, s), 1),
        ((p, q, s + t), -1),
    ):
        dd, mult = _with_added(tilde, added, d, r)
        if dd is None:
            continue
        assert compare(dd, delta) < 0, "derived constraint must shrink"
        val += sign * mult * nodal_count(r, d, dd, k)

    # boundary terms over ordered degree splits and constraint splits
    decs = (((p, s), (q, t), 1), ((q, t), (p, s), 1), ((s, t), (p, q), -1), ((p, q), (s, t), -1))
    for d1 in range(1, d):
        d2 = d - d1
        raw1 = dim_nodal(r, d1, 1) - k
        lo, hi = raw1 - r - 2, raw1  # decorations impose at most 2 more
        for g1, g2, m in partitions(tilde, lo, hi):
            for dec1, dec2, sign in decs:
                a1, m1 = _with_added(g1, dec1, d1, r)
                if a1 is None:
                    continue
                a2, m2 = _with_added(g2, dec2, d2, r)
                if a2 is None:
                    continue
                nr = _nr_fiber(r, d1, d2, a1, k, a2)
                if nr:
                    val += sign * m * m1 * m2 * nr
            for dec1, dec2, sign in (((p, s), (q, t), 1), ((p, q), (s, t), -1)):
                a1, m1 = _with_added(g1, dec1, d1, r)
                if a1 is None:
                    continue
                a2, m2 = _with_added(g2, dec2, d2, r)
                if a2 is None:
                    continue
                rr = rr2_count(r, d1, d2, a1, a2, k, 0)
                if rr:
                    val += sign * m * m1 * m2 * rr
    return val


def _nr_fiber(r, d1, d2, g1, k, g2):
    """Nodal (degree d1, constraint g1, node condition k) glued to rational
    (degree d2, g2) at an unconstrained point."""
    e1 = dim_nodal(r, d1, 1) - g1.conditions() - k
    e2 = dim_rational(r, d2, 1) - g2.conditions()
    if e1 + e2 != r:
        raise AssertionError("glued dimension bookkeeping is off")
    if not 0 <= e1 <= r:
        return ZERO
    s1 = marked_nodal(r, d1, g1, k, e1)
    if not s1:
        return ZERO
    s2 = marked_incidence(r, d2, g2, e2)
    return s1 * s2


# ---------------------------------------------------------------------------
# Elliptic curves with fixed generic j-invariant.
# ---------------------------------------------------------------------------

def elliptic_fixed_j(r: int, d: int, delta: Constraint):
    """Count via nodal numbers: each subset of i tangencies may degenerate to
    a codim-i condition on the node, with weight 2^i."""
    if delta.node_codim is not None:
        raise ValueError("fixed-j counts carry no node condition")
    t = delta.tangencies
    total = ZERO
    for i in range(0, min(t, r) + 1):
        val = nodal_count(r, d, delta.drop_tangencies(i), i)
        if val:
            total += (1 << i) * comb(t, i) * val
    return total
