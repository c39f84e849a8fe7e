"""Exact rational arithmetic helpers.

Everything in this package is computed with `fractions.Fraction`; floats never
enter any result. These helpers cover parsing/formatting the "p/q" wire format
and a few integer utilities used by the scaled-integer fast path.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def rat(value) -> Fraction:
    """Parse an exact rational from an int, Fraction, or a "p/q" string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int or 'p/q' string")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(value: Fraction) -> str:
    """Format a rational as "p/q" (or "p" when integral)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def ceil_frac(value: Fraction) -> int:
    """Exact ceiling of a rational."""
    value = Fraction(value)
    return -((-value.numerator) // value.denominator)


def lcm_denominators(values) -> int:
    """lcm of the denominators of an iterable of rationals (at least 1)."""
    out = 1
    for v in values:
        out = lcm(out, Fraction(v).denominator)
    return out
