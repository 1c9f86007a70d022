"""Extended rationals: exact ``Fraction`` values plus the two infinities.

Finite values are always :class:`fractions.Fraction`; the infinities are the
float sentinels ``math.inf`` / ``-math.inf``, which compare exactly against
fractions. No finite float ever enters a value path.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

INF = math.inf
NEG_INF = -math.inf

ExtendedRational = Union[Fraction, float]


def is_finite(v: ExtendedRational) -> bool:
    return not (isinstance(v, float) and math.isinf(v))


def ext(v) -> ExtendedRational:
    """Normalise ints/fractions/infinities into an extended rational."""
    if isinstance(v, float):
        if math.isinf(v):
            return v
        raise TypeError(f"finite float {v!r} is not an exact value")
    return Fraction(v)


def parse_rational(text: str) -> Fraction:
    """Parse ``P/Q`` or an integer; raises ``ValueError`` on anything else."""
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        num, den = int(p), int(q)
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    return Fraction(int(text))


def format_value(v: ExtendedRational) -> str:
    """``P/Q`` (always with a denominator), ``inf`` or ``-inf``."""
    if not is_finite(v):
        return "inf" if v > 0 else "-inf"
    f = Fraction(v)
    return f"{f.numerator}/{f.denominator}"


def ceil_rational(v: Fraction) -> int:
    return math.ceil(Fraction(v))
