"""Exact rational arithmetic carrier.

gmpy2.mpq is used when available (much faster on the determinant-heavy
paths); fractions.Fraction otherwise.  Both expose .numerator/.denominator
and format as "p/q", which the JSON report and netlist writer rely on.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    Rat = _mpq
    _HAVE_GMPY = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Rat = Fraction
    _HAVE_GMPY = False

RAT_TYPES = (Fraction, int) if Rat is Fraction else (Rat(0).__class__, Fraction, int)

ZERO = Rat(0)
ONE = Rat(1)


def rat(num, den=1):
    """Build an exact rational from ints, Fractions or another rational."""
    return Rat(num, den) if den != 1 else Rat(num)


def is_rat(value) -> bool:
    return isinstance(value, RAT_TYPES)


def rat_from_str(text: str):
    """Parse "p", "p/q" or a plain decimal like "1.25" exactly."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        d = int(den)
        if d == 0:
            raise ValueError("zero denominator")
        return Rat(int(num), d)
    if "." in text or "e" in text or "E" in text:
        f = Fraction(text)
        return Rat(f.numerator, f.denominator)
    return Rat(int(text))


def rat_str(value) -> str:
    """Canonical "p/q" (or "p") form, stable across backends."""
    n, d = value.numerator, value.denominator
    return f"{n}" if d == 1 else f"{n}/{d}"


def sign(value) -> int:
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def floor_rat(value) -> int:
    return value.numerator // value.denominator


def rat_to_decimal(value, digits: int = 12) -> str:
    """Decimal string with `digits` places, exact rounding toward zero."""
    n, d = value.numerator, value.denominator
    neg = n < 0
    n = abs(n)
    whole, rem = divmod(n, d)
    frac = (rem * 10**digits) // d
    out = f"{whole}.{frac:0{digits}d}".rstrip("0").rstrip(".")
    if out == "":
        out = "0"
    return "-" + out if neg and (whole or frac) else out
