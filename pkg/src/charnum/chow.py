"""Exact arithmetic in the Chow ring of Bl_diag(P^r x P^r).

Generators: the two hyperplane pullbacks h, k and the exceptional divisor e,
subject to
    h^{r+1} = k^{r+1} = 0,
    h e = k e,
    e^r = sum_{i=1}^{r-1} (-1)^{i-1} C(r+1, i) h^i e^{r-i}
          + (-1)^{r-1} sum_{i=0}^{r} h^i k^{r-i}.

Normal form monomials are h^a k^b (a, b <= r) and h^a e^c (a <= r,
1 <= c <= r-1): any monomial with both k and e rewrites k->h, and e-powers
of r or more are eliminated eagerly.  Every class is a sparse map from
normal-form monomials to exact rational coefficients.

The top Chow group is spanned by h^r k^r alone (an h^a e^c monomial has
degree at most 2r-1), so integration reads off that single coefficient.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Tuple

from .rationals import QQ, ZERO, fmt

Mono = Tuple[int, int, int]  # (h-exp, k-exp, e-exp)


@lru_cache(maxsize=None)
def _e_top_relation(r: int) -> Tuple[Tuple[Mono, int], ...]:
    """e^r rewritten in lower e-powers and pure h,k monomials."""
    terms: List[Tuple[Mono, int]] = []
    for i in range(1, r):
        terms.append(((i, 0, r - i), (-1) ** (i - 1) * comb(r + 1, i)))
    sign = (-1) ** (r - 1)
    for i in range(0, r + 1):
        terms.append(((i, r - i, 0), sign))
    return tuple(terms)


@lru_cache(maxsize=None)
def _reduce_mono(r: int, a: int, b: int, c: int) -> Tuple[Tuple[Mono, int], ...]:
    """Normal form of h^a k^b e^c as ((monomial, int coefficient), ...)."""
    if c > 0 and b > 0:
        a, b = a + b, 0
    if a > r or b > r:
        return ()
    if c < r:
        return (((a, b, c), 1),)
    acc: Dict[Mono, int] = {}
    for (i, j, m), coef in _e_top_relation(r):
        for mono, c2 in _reduce_mono(r, a + i, b + j, m + c - r):
            acc[mono] = acc.get(mono, 0) + coef * c2
    return tuple((m, v) for m, v in acc.items() if v)


class BlowupClass:
    """A Chow class in normal form over exact rationals."""

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms: Dict[Mono, "QQ"] = None, reduce: bool = False):
        self.r = r
        if not terms:
            self.terms: Dict[Mono, QQ] = {}
        elif reduce:
            acc: Dict[Mono, QQ] = {}
            for (a, b, c), coef in terms.items():
                if not coef:
                    continue
                for mono, mult in _reduce_mono(r, a, b, c):
                    v = acc.get(mono, ZERO) + coef * mult
                    if v:
                        acc[mono] = v
                    else:
                        acc.pop(mono, None)
            self.terms = acc
        else:
            self.terms = {m: c for m, c in terms.items() if c}

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, r: int) -> "BlowupClass":
        return cls(r)

    @classmethod
    def monomial(cls, r: int, a: int, b: int, c: int, coef=1) -> "BlowupClass":
        return cls(r, {(a, b, c): QQ(coef)}, reduce=True)

    # -- ring operations -----------------------------------------------------
    def __add__(self, other: "BlowupClass") -> "BlowupClass":
        acc = dict(self.terms)
        for m, c in other.terms.items():
            v = acc.get(m, ZERO) + c
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return BlowupClass(self.r, acc)

    def __sub__(self, other: "BlowupClass") -> "BlowupClass":
        return self + other.scale(-1)

    def scale(self, coef) -> "BlowupClass":
        coef = QQ(coef)
        if not coef:
            return BlowupClass(self.r)
        return BlowupClass(self.r, {m: c * coef for m, c in self.terms.items()})

    def __mul__(self, other: "BlowupClass") -> "BlowupClass":
        acc: Dict[Mono, QQ] = {}
        for (a1, b1, c1), x in self.terms.items():
            for (a2, b2, c2), y in other.terms.items():
                coef = x * y
                for mono, mult in _reduce_mono(self.r, a1 + a2, b1 + b2, c1 + c2):
                    v = acc.get(mono, ZERO) + coef * mult
                    if v:
                        acc[mono] = v
                    else:
                        acc.pop(mono, None)
        return BlowupClass(self.r, acc)

    def __pow__(self, n: int) -> "BlowupClass":
        if n < 0:
            raise ValueError("negative power")
        out = BlowupClass.monomial(self.r, 0, 0, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        return isinstance(other, BlowupClass) and self.r == other.r and self.terms == other.terms

    def __hash__(self):
        return hash((self.r, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    # -- grading -------------------------------------------------------------
    def codims(self) -> set:
        return {a + b + c for a, b, c in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.codims()) <= 1

    def codim(self) -> int:
        cs = self.codims()
        if len(cs) != 1:
            raise ValueError("class is zero or inhomogeneous")
        return cs.pop()

    def __repr__(self):
        return "BlowupClass(r=%d, %s)" % (self.r, format_class(self))


def gens(r: int) -> Tuple[BlowupClass, BlowupClass, BlowupClass]:
    """The classes (h, k, e)."""
    return (
        BlowupClass.monomial(r, 1, 0, 0),
        BlowupClass.monomial(r, 0, 1, 0),
        BlowupClass.monomial(r, 0, 0, 1),
    )


def one(r: int) -> BlowupClass:
    return BlowupClass.monomial(r, 0, 0, 0)


def reduce_terms(r: int, raw: Dict[Mono, "QQ"]) -> BlowupClass:
    """Normal form of an arbitrary polynomial given as {(a,b,c): coeff}."""
    return BlowupClass(r, {m: QQ(c) for m, c in raw.items()}, reduce=True)


def integrate(x: BlowupClass):
    """Degree of a top (codimension 2r) class: its h^r k^r coefficient."""
    if not x.terms:
        return ZERO
    if not x.is_homogeneous() or x.codim() != 2 * x.r:
        raise ValueError("integrate needs a homogeneous class of codimension 2r")
    return x.terms.get((x.r, x.r, 0), ZERO)


def monomial_basis(r: int, codim: int) -> List[Mono]:
    """All normal-form monomials of the given codimension."""
    if codim < 0 or codim > 2 * r:
        return []
    out = [(a, codim - a, 0) for a in range(max(0, codim - r), min(r, codim) + 1)]
    out.extend(
        (a, 0, codim - a)
        for a in range(max(0, codim - r + 1), min(r, codim - 1) + 1)
    )
    return out


# ---------------------------------------------------------------------------
# Text rendering and parsing (CLI / debugging).
# ---------------------------------------------------------------------------

def _mono_str(m: Mono) -> str:
    a, b, c = m
    if m == (0, 0, 0):
        return "1"
    out = []
    for var, exp in (("h", a), ("k", b), ("e", c)):
        if exp == 1:
            out.append(var)
        elif exp > 1:
            out.append("%s^%d" % (var, exp))
    return "".join(out)


def format_class(x: BlowupClass) -> str:
    if not x.terms:
        return "0"
    keys = sorted(x.terms, key=lambda m: (m[2], -m[0], -m[1]))
    pieces = []
    for m in keys:
        coef = x.terms[m]
        mono = _mono_str(m)
        mag = coef if coef > 0 else -coef
        if mono == "1":
            body = fmt(mag)
        elif mag == 1:
            body = mono
        else:
            body = "%s%s" % (fmt(mag), mono)
        if not pieces:
            pieces.append(body if coef > 0 else "-" + body)
        else:
            pieces.append(("+ " if coef > 0 else "- ") + body)
    return " ".join(pieces)


class _Parser:
    def __init__(self, r: int, text: str):
        self.r = r
        self.toks = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str):
        toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(("num", int(text[i:j])))
                i = j
            elif ch in "hke":
                toks.append(("var", ch))
                i += 1
            elif ch in "+-*/^()":
                toks.append((ch, ch))
                i += 1
            else:
                raise ValueError("unexpected character %r" % ch)
        toks.append(("end", None))
        return toks

    def peek(self):
        return self.toks[self.pos][0]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise ValueError("expected %s, found %r" % (kind, tok[0]))
        self.pos += 1
        return tok

    def expr(self) -> BlowupClass:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        val = self.term().scale(sign)
        while self.peek() in "+-":
            op = self.take()[0]
            nxt = self.term()
            val = val + nxt if op == "+" else val - nxt
        return val

    def term(self) -> BlowupClass:
        val = self.factor()
        while True:
            kind = self.peek()
            if kind == "*":
                self.take()
                val = val * self.factor()
            elif kind == "/":
                self.take()
                num = self.take("num")[1]
                val = val.scale(QQ(1, num))
            elif kind in ("num", "var", "("):
                val = val * self.factor()
            else:
                return val

    def factor(self) -> BlowupClass:
        val = self.primary()
        while self.peek() == "^":
            self.take()
            val = val ** self.take("num")[1]
        return val

    def primary(self) -> BlowupClass:
        kind, data = self.take()
        if kind == "num":
            return one(self.r).scale(QQ(data))
        if kind == "var":
            h, k, e = gens(self.r)
            return {"h": h, "k": k, "e": e}[data]
        if kind == "(":
            val = self.expr()
            self.take(")")
            return val
        if kind == "-":
            return self.factor().scale(-1)
        raise ValueError("unexpected token %r" % kind)


def parse_class(r: int, text: str) -> BlowupClass:
    """Parse h/k/e polynomials with rational coefficients, e.g. '3he - h^2'."""
    p = _Parser(r, text)
    val = p.expr()
    if p.peek() != "end":
        raise ValueError("trailing input in class expression")
    return val
