"""Pairs of rational curves meeting at two nodes.

The count of pairs (C1, C2) with C1 meeting C2 at a distinguished node on a
codim-k subspace and a second node on a codim-l subspace is an intersection
number T1 * T2 * h^k * k^l in the Chow ring of the blowup of P^r x P^r along
the diagonal, where T_i is the class of the image of the two-marked family
of degree-d_i curves under evaluation at the two marks.

family_class recovers T from counts alone: pairing T against h^m k^n gives a
two-marked incidence count, and against h^m e (h+k-e)^n a special tangent
count with n <= r-2 special tangents (the e factor fuses the two marks, the
proper transform h+k-e turns incidence into tangency of the image).  These
pairings determine T, so T is solved from the monomial-basis pairing matrix
by exact elimination.
"""

from __future__ import annotations

from math import comb

from .cache import CACHE
from .chow import BlowupClass, gens, integrate, monomial_basis
from .constraints import Constraint, DimensionError, dim_rational, partitions
from .gw import rational_char
from .rationals import QQ, ZERO
from .special import w_count

_FC_MEMO = {}


class SingularSystemError(ValueError):
    """The pairing system failed to pin down a family class (a dimension
    bookkeeping bug upstream)."""


def _solve_exact(rows, rhs, ncols):
    """Unique exact solution of an overdetermined consistent linear system."""
    m = [list(row) + [val] for row, val in zip(rows, rhs)]
    nrows = len(m)
    pivots = []
    col = 0
    for col in range(ncols):
        piv = None
        for i in range(len(pivots), nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        r0 = len(pivots)
        m[r0], m[piv] = m[piv], m[r0]
        inv = QQ(1) / m[r0][col]
        m[r0] = [x * inv for x in m[r0]]
        for i in range(nrows):
            if i != r0 and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r0])]
        pivots.append(col)
    if len(pivots) != ncols:
        raise SingularSystemError("pairing matrix is rank deficient")
    for i in range(len(pivots), nrows):
        if m[i][ncols]:
            raise SingularSystemError("pairing system is inconsistent")
    x = [ZERO] * ncols
    for i, col in enumerate(pivots):
        x[col] = m[i][ncols]
    return x


def _two_marked(r, d, delta, m, n):
    """#(two-marked family, first mark on codim m, second on codim n).

    A free mark over-determines the curve side, so m = 0 or n = 0 vanishes;
    hyperplane conditions contribute a factor d each.
    """
    if m <= 0 or n <= 0 or m > r or n > r:
        return ZERO
    mult = 1
    g = delta
    for c in (m, n):
        if c == 1:
            mult *= d
        else:
            g = g.with_incidence(c)
    val = rational_char(r, d, g)
    return mult * val if val else val


def family_class(r: int, d: int, delta: Constraint) -> BlowupClass:
    """Class of the two-marked constrained family in the diagonal blowup."""
    if delta.node_codim is not None:
        raise ValueError("family constraints carry no node condition")
    key = (r, d, delta.key)
    try:
        return _FC_MEMO[key]
    except KeyError:
        pass
    dim_t = dim_rational(r, d, 2) - delta.conditions()
    if dim_t < 0 or dim_t > 2 * r:
        # empty family, or fibers of the evaluation are positive-dimensional:
        # either way the pushforward cycle vanishes
        cls = BlowupClass.zero(r)
        _FC_MEMO[key] = cls
        return cls
    codim = 2 * r - dim_t
    basis = monomial_basis(r, codim)
    h, k, e = gens(r)
    probes = []
    for m in range(0, r + 1):
        n = dim_t - m
        if 0 <= n <= r:
            probes.append(((h**m) * (k**n), _two_marked(r, d, delta, m, n)))
    hke = h + k - e
    for n in range(0, r - 1):
        m = dim_t - 1 - n
        if 0 <= m <= r:
            probes.append(((h**m) * e * (hke**n), w_count(r, d, delta, m, n)))
    basis_cls = [BlowupClass.monomial(r, *mono) for mono in basis]
    rows = [[integrate(p * b) for b in basis_cls] for p, _ in probes]
    rhs = [val for _, val in probes]
    coeffs = _solve_exact(rows, rhs, len(basis))
    cls = BlowupClass(r, {mono: c for mono, c in zip(basis, coeffs) if c})
    _FC_MEMO[key] = cls
    return cls


def rr2_count(r: int, d1: int, d2: int, g1: Constraint, g2: Constraint, k: int, l: int):
    """Pairs with the first node (the identified marks) on a codim-k subspace
    and the connecting node on codim-l, component i satisfying g_i.

    Ordered count: the two components are distinguished by their constraint
    assignment.  Callers wanting unordered pairs halve it themselves.
    """
    if min(d1, d2) < 1:
        raise ValueError("degrees must be positive")
    if k < 0 or l < 0:
        raise ValueError("negative node condition")
    if k > r or l > r:
        return ZERO
    dims = [dim_rational(r, dd, 2) - g.conditions() for dd, g in ((d1, g1), (d2, g2))]
    excess = (2 * r - dims[0]) + (2 * r - dims[1]) + k + l - 2 * r
    if excess > 0:
        return ZERO
    if excess < 0:
        raise DimensionError("under-determined pair count (dimension %d)" % -excess)
    if min(dims) < 0 or max(dims) > 2 * r:
        return ZERO
    key1, key2 = (d1, g1.key), (d2, g2.key)
    if key2 < key1:
        key1, key2 = key2, key1
    return CACHE.get_or_compute(
        ("rr2", r, key1, key2, k, l), lambda: _rr2_calc(r, d1, d2, g1, g2, k, l)
    )


def _rr2_calc(r, d1, d2, g1, g2, k, l):
    t1 = family_class(r, d1, g1)
    if not t1:
        return ZERO
    t2 = family_class(r, d2, g2)
    if not t2:
        return ZERO
    return integrate(t1 * t2 * BlowupClass.monomial(r, k, l, 0))


def rr2_count_with_tangency(r: int, d1: int, d2: int, delta: Constraint, k: int, kp: int):
    """Pair count against an undistributed constraint: tangencies degenerate
    to the connecting node (raising its condition, weight 2^l per subset) and
    the rest splits over the components in all ways."""
    if delta.node_codim is not None:
        raise ValueError("node conditions are the k, kp arguments")
    return CACHE.get_or_compute(
        ("rr2t", r, d1, d2, delta.key, k, kp),
        lambda: _rr2_tangency_calc(r, d1, d2, delta, k, kp),
    )


def _rr2_tangency_calc(r, d1, d2, delta, k, kp):
    total = ZERO
    t = delta.tangencies
    raw1 = dim_rational(r, d1, 2)
    for l in range(0, t + 1):
        if kp + l > r:
            break
        dl = delta.drop_tangencies(l)
        coef = (1 << l) * comb(t, l)
        sub = ZERO
        for s1, s2, mult in partitions(dl, raw1 - 2 * r, raw1):
            val = rr2_count(r, d1, d2, s1, s2, k, kp + l)
            if val:
                sub += mult * val
        if sub:
            total += coef * sub
    return total
