"""Exact rational helpers: formatting, parsing, the INFINITY marker, and a
certified rational upper bound on the natural logarithm.

Rationals are :class:`fractions.Fraction` throughout the package and are
never rendered as floating point.
"""

from __future__ import annotations

import enum
from fractions import Fraction


class Infinity(enum.Enum):
    """Distinguished infinite value for imbalance gcds (never a sentinel int)."""

    INFINITY = "INFINITY"

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "INFINITY"


INFINITY = Infinity.INFINITY

HcfValue = int | Infinity


def fmt_frac(q: Fraction | int) -> str:
    """Render exactly: ``p/q``, or just ``p`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` (no decimals accepted)."""
    text = text.strip()
    if "." in text:
        raise ValueError(f"decimal rationals are not accepted: {text!r}")
    if "/" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


_LN_TERMS = 64


def _atanh_upper(z: Fraction, terms: int = _LN_TERMS) -> Fraction:
    """Rational upper bound on 2*atanh(z) for 0 <= z < 1.

    Partial sum of 2*sum z^(2k+1)/(2k+1) plus the closed-form tail bound
    2*z^(2K+1) / ((2K+1)(1-z^2)); everything rounds outward.
    """
    total = Fraction(0)
    power = z
    z2 = z * z
    for k in range(terms):
        total += power / (2 * k + 1)
        power *= z2
    tail = power / ((2 * terms + 1) * (1 - z2))
    return 2 * (total + tail)


_LN2_UPPER = _atanh_upper(Fraction(1, 3))


def ln_upper(x: Fraction | int) -> Fraction:
    """Rational upper bound on ln(x) for x >= 1.

    Reduces x into [1, 2] by halving (pulling out exact multiples of an
    upper bound on ln 2), then applies the atanh series at
    z = (x-1)/(x+1) <= 1/3.
    """
    x = Fraction(x)
    if x < 1:
        raise ValueError("ln_upper requires x >= 1")
    halvings = 0
    while x > 2:
        x /= 2
        halvings += 1
    return halvings * _LN2_UPPER + _atanh_upper((x - 1) / (x + 1))
