"""Scalar helpers for the two-level number tower.

Coefficients are either exact rationals (:class:`fractions.Fraction`, including
plain ints) or binary64 floats.  Arithmetic on exact values stays exact; any
mixed expression demotes to float through normal Python semantics, so the rest
of the library is written generically and works for both.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Number = Union[int, float, Fraction]


def is_exact(x: Number) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def parse_number(text, exact: bool = False) -> Number:
    """Parse a coefficient from its JSON representation.

    Accepts raw ints/floats, ``"p/q"`` rational strings and decimal strings.
    With ``exact=True`` decimal strings become exact rationals (a finite
    decimal is exactly representable); otherwise they parse to float.
    """
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return text
    if isinstance(text, float):
        return text
    s = str(text).strip()
    if "/" in s:
        return Fraction(s)
    if exact:
        return Fraction(s)
    return float(s)


def format_number(x: Number) -> str:
    """Serialize a coefficient: rationals as ``p/q`` (or bare integer), floats
    via ``repr`` (shortest round-trip decimal)."""
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def exact_sqrt(x: Fraction) -> Fraction | None:
    """Square root of a rational if it is again rational, else ``None``."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None
