"""Constraint bookkeeping: the data every recursion branches on.

A constraint records how many tangency hyperplanes a curve must touch, how
many general linear subspaces of each codimension it must meet, and
optionally a codimension condition on a distinguished node of the image.
Codimension-1 incidences are never stored: meeting a hyperplane is automatic
for a degree-d curve and only contributes a factor d per hyperplane
(see normalize_hyperplanes).

Constraints are canonical value objects (hashable, totally ordered) so they
can key the shared memo cache, and they carry the well-founded ordering that
witnesses termination of the nodal recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Optional, Tuple

Inc = Tuple[Tuple[int, int], ...]  # sorted ((codim, count), ...), codims >= 2


def _norm_inc(items) -> Inc:
    agg = {}
    for c, n in items:
        if n < 0:
            raise ValueError("negative incidence count")
        if n == 0:
            continue
        if c < 2:
            raise ValueError("codimension-%d incidences are not stored" % c)
        agg[c] = agg.get(c, 0) + n
    return tuple(sorted(agg.items()))


@dataclass(frozen=True)
class Constraint:
    tangencies: int = 0
    incidences: Inc = ()
    node_codim: Optional[int] = None

    def __post_init__(self):
        if self.tangencies < 0:
            raise ValueError("negative tangency count")
        object.__setattr__(self, "incidences", _norm_inc(self.incidences))
        if self.node_codim is not None and self.node_codim < 0:
            raise ValueError("negative node codimension")

    # -- canonical key used by the memo cache ------------------------------
    @property
    def key(self):
        return (self.tangencies, self.incidences, self.node_codim)

    # -- basic accessors ----------------------------------------------------
    def count(self, codim: int) -> int:
        for c, n in self.incidences:
            if c == codim:
                return n
        return 0

    @property
    def n_elements(self) -> int:
        """Number of stored (non-hyperplane) incidence elements."""
        return sum(n for _, n in self.incidences)

    def codims(self) -> Tuple[int, ...]:
        """Incidence codimensions as a sorted tuple with multiplicity."""
        out = []
        for c, n in self.incidences:
            out.extend([c] * n)
        return tuple(out)

    def conditions(self) -> int:
        """Total codimension cut out in the moduli space.

        Tangencies impose 1 each, an unmarked codim-c incidence imposes c-1,
        a codim-k node condition imposes k.
        """
        tot = self.tangencies + sum((c - 1) * n for c, n in self.incidences)
        if self.node_codim:
            tot += self.node_codim
        return tot

    # -- edits (all return new values) --------------------------------------
    def with_incidence(self, codim: int, n: int = 1) -> "Constraint":
        return Constraint(self.tangencies, self.incidences + ((codim, n),), self.node_codim)

    def without_incidence(self, codim: int, n: int = 1) -> "Constraint":
        if self.count(codim) < n:
            raise ValueError("removing absent incidence")
        items = [(c, m - n) if c == codim else (c, m) for c, m in self.incidences]
        return Constraint(self.tangencies, tuple(items), self.node_codim)

    def with_tangencies(self, n: int) -> "Constraint":
        return Constraint(self.tangencies + n, self.incidences, self.node_codim)

    def drop_tangencies(self, n: int = 1) -> "Constraint":
        return Constraint(self.tangencies - n, self.incidences, self.node_codim)

    def with_node(self, k: Optional[int]) -> "Constraint":
        return Constraint(self.tangencies, self.incidences, k)

    def bare(self) -> "Constraint":
        """Same incidences and tangencies, no node condition."""
        return Constraint(self.tangencies, self.incidences, None)

    # -- the termination order ----------------------------------------------
    @property
    def rank_value(self) -> int:
        return -sum(n * c * c for c, n in self.incidences)

    @property
    def rank_key(self):
        """Sort key: more tangencies first, then fewer elements, then rank.

        Lexicographic ascending on this tuple realizes the prioritized
        comparison (ties broken canonically by the raw fields so that the
        order is total and deterministic).
        """
        return (-self.tangencies, self.n_elements, self.rank_value, self.key)

    def __lt__(self, other: "Constraint"):
        return self.rank_key < other.rank_key

    def __le__(self, other: "Constraint"):
        return self.rank_key <= other.rank_key

    def __str__(self):
        parts = []
        if self.tangencies:
            parts.append("t:%d" % self.tangencies)
        parts.extend("c%d:%d" % (c, n) for c, n in self.incidences)
        if self.node_codim is not None:
            parts.append("node:%d" % self.node_codim)
        return ";".join(parts) if parts else "empty"


def compare(a: Constraint, b: Constraint) -> int:
    """-1 if a precedes b in the recursion order, 0 if equal, else 1."""
    ka, kb = a.rank_key, b.rank_key
    return -1 if ka < kb else (0 if ka == kb else 1)


def parse_constraint(text: str) -> Constraint:
    """Parse the CLI syntax `t:<n>;c2:<n>;...;node:<k>` (order-free)."""
    tang, node = 0, None
    inc = []
    for piece in text.split(";"):
        piece = piece.strip()
        if not piece:
            continue
        key, _, val = piece.partition(":")
        if not val:
            raise ValueError("malformed constraint piece %r" % piece)
        n = int(val)
        key = key.strip().lower()
        if key == "t":
            tang = n
        elif key == "node":
            node = n
        elif key.startswith("c"):
            c = int(key[1:])
            if c == 1:
                raise ValueError("codim-1 conditions are free; drop them (multiply by d)")
            inc.append((c, n))
        else:
            raise ValueError("unknown constraint key %r" % key)
    return Constraint(tang, tuple(inc), node)


def normalize_hyperplanes(raw_counts, d: int):
    """Strip codim-1 entries from {codim: count}, returning the multiplier d^m.

    A degree-d curve meets every hyperplane, so a hyperplane incidence only
    rescales the count.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    m = 0
    inc = []
    tang = raw_counts.get(0, 0)
    for c, n in raw_counts.items():
        if c == 0:
            continue
        if c == 1:
            m += n
        else:
            inc.append((c, n))
    return Constraint(tang, tuple(inc)), d**m


def partitions(delta: Constraint, lo: Optional[int] = None, hi: Optional[int] = None) -> Iterator:
    """Ordered two-way splits of a constraint's elements, with multiplicity.

    Tangencies and each incidence class split independently; the general
    subspaces within one class are distinct, so a split taking j of n
    carries weight C(n, j).  Yields (gamma1, gamma2, mult).  The node slot
    must be empty: callers route node conditions themselves.

    lo/hi, when given, restrict to splits whose first part imposes a total
    codimension in [lo, hi] (the dimension window pruning used by every
    boundary sum; most splits are dimensionally infeasible).
    """
    if delta.node_codim is not None:
        raise ValueError("split the bare constraint; node conditions do not split")
    classes = [(0, delta.tangencies)] + [(c, n) for c, n in delta.incidences]
    weights = [1 if c == 0 else c - 1 for c, _ in classes]

    def rec(i, taken, mult, conds1):
        if lo is not None:
            rest = sum(w * n for w, (_, n) in zip(weights[i:], classes[i:]))
            if conds1 + rest < lo or conds1 > hi:
                return
        if i == len(classes):
            g1 = Constraint(taken[0][1] if taken and taken[0][0] == 0 else 0,
                            tuple(t for t in taken if t[0] != 0))
            g2 = Constraint(delta.tangencies - g1.tangencies,
                            tuple((c, n - g1.count(c)) for c, n in delta.incidences))
            yield g1, g2, mult
            return
        c, n = classes[i]
        w = weights[i]
        for j in range(n + 1):
            yield from rec(i + 1, taken + [(c, j)], mult * comb(n, j), conds1 + w * j)

    yield from rec(0, [], 1, 0)


def split_weight_total(delta: Constraint) -> int:
    """Sum of all split multiplicities: prod over classes of 2^count."""
    return 2 ** (delta.tangencies + delta.n_elements)


# ---------------------------------------------------------------------------
# Dimension bookkeeping.  dim M(genus 0, degree d, P^r, n marks)
#   = (r+1)d + r - 3 + n; identifying two marked points imposes r.
# ---------------------------------------------------------------------------

def dim_rational(r: int, d: int, marks: int = 0) -> int:
    return (r + 1) * d + r - 3 + marks


def dim_nodal(r: int, d: int, marks: int = 0) -> int:
    return (r + 1) * d - 1 + marks


@dataclass(frozen=True)
class FamilyHandle:
    """A countable family: rational or nodal curves plus their constraint."""

    kind: str  # "R" or "N"
    r: int
    degree: int
    constraint: Constraint = field(default_factory=Constraint)
    marked_codim: int = 0  # condition on a distinguished marked point
    special_tangents: int = 0

    def __post_init__(self):
        if self.kind not in ("R", "N"):
            raise ValueError("kind must be R or N")
        if self.kind == "R" and self.constraint.node_codim is not None:
            raise ValueError("rational families carry no node condition")


def expected_dimension(family: FamilyHandle, delta: Optional[Constraint] = None) -> int:
    """Moduli dimension minus imposed conditions for a family.

    The marked point carrying `marked_codim` contributes its own +1 to the
    moduli dimension; special tangent conditions impose 1 each.
    """
    delta = family.constraint if delta is None else delta
    marks = 1 if (family.marked_codim or family.special_tangents) else 0
    if family.kind == "R":
        dim = dim_rational(family.r, family.degree, marks)
    else:
        dim = dim_nodal(family.r, family.degree, marks)
    return dim - delta.conditions() - family.marked_codim - family.special_tangents


class DimensionError(ValueError):
    """Raised when a count is requested for a positive-dimensional family."""
