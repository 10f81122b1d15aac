"""Exact rational arithmetic backend.

All counts are exact rationals end to end; nothing here is floating point.
gmpy2's compiled mpq is used when importable (it is dramatically faster on
the deep memoized recursions), with fractions.Fraction as the pure-Python
fallback.  Set CHARNUM_PURE_PYTHON=1 to force the fallback;
scripts/bench_backends.py compares the two.
"""

import os

BACKEND = "fractions"
if not os.environ.get("CHARNUM_PURE_PYTHON"):
    try:
        from gmpy2 import mpq as QQ

        BACKEND = "gmpy2"
    except ImportError:
        pass
if BACKEND == "fractions":
    from fractions import Fraction as QQ  # noqa: F401

ZERO = QQ(0)
ONE = QQ(1)


def fmt(x) -> str:
    """Integers print without a denominator, everything else as p/q."""
    n, d = x.numerator, x.denominator
    return str(n) if d == 1 else "%d/%d" % (n, d)


def parse(text: str):
    text = text.strip()
    if "/" in text:
        n, d = text.split("/", 1)
        return QQ(int(n), int(d))
    return QQ(int(text))


def half_pow(k: int):
    """2**k as an exact rational, k may be negative."""
    return QQ(2**k) if k >= 0 else QQ(1, 2 ** (-k))
