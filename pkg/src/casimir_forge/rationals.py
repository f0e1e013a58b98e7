"""Exact rational coefficients.

All arithmetic in the package is exact.  gmpy2's mpq is used when available
(it is roughly an order of magnitude faster than fractions.Fraction on the
small values that dominate structure-constant work); stdlib Fraction is the
fallback so the package stays importable without gmpy2.
"""

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as QQ

ZERO = QQ(0)
ONE = QQ(1)


def rational(num, den=1):
    """Exact rational from integers (den may be negative; normalised)."""
    return QQ(num, den)


def qstr(c) -> str:
    """Canonical text form: 'n' for integers, 'n/d' otherwise."""
    c = QQ(c)
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


def as_int_pair(c):
    """(numerator, denominator) as plain Python ints, den > 0."""
    c = QQ(c)
    return int(c.numerator), int(c.denominator)
