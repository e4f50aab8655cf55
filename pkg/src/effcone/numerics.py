"""Exact-arithmetic helpers shared by the rest of the package.

Everything here is thin glue over :mod:`fractions` and :mod:`math`: the
point is to centralize the few conventions the package relies on (rationals
are always :class:`fractions.Fraction`, extended gcds are normalized to a
positive gcd, fractional parts live in ``[0, 1)``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Rational = Fraction

__all__ = [
    "Rational",
    "as_rational",
    "frac",
    "egcd",
    "mod_inverse",
    "triangular",
]


def as_rational(value) -> Fraction:
    """Coerce ``value`` to an exact :class:`~fractions.Fraction`.

    Accepts ints, Fractions, and strings such as ``"3/7"`` or ``"-2"``.
    Floats are rejected: silently converting them would smuggle binary
    rounding error into computations that must stay exact.
    """
    if isinstance(value, float):
        raise TypeError("refusing to convert float to exact rational; pass a Fraction or string")
    return Fraction(value)


def frac(x) -> Fraction:
    """Fractional part ``{x} = x - floor(x)``, always in ``[0, 1)``.

    >>> frac(Fraction(20, 7))
    Fraction(6, 7)
    >>> frac(Fraction(-3, 4))
    Fraction(1, 4)
    """
    x = as_rational(x)
    return x - (x.numerator // x.denominator)


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return ``(g, s, t)`` with ``g = gcd(a, b) > 0`` and
    ``s*a + t*b == g``.

    Raises :class:`ValueError` for ``a == b == 0`` (no positive gcd exists).
    """
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def mod_inverse(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m`` in ``[0, m)``; requires ``gcd(a, m) == 1``."""
    if m <= 0:
        raise ValueError(f"modulus must be positive, got {m}")
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m)


def triangular(d: int) -> int:
    """The triangular number ``d*(d+1)/2`` (number of monomials of degree < d
    in two variables, ``binomial(d+1, 2)``)."""
    if d < 0:
        raise ValueError(f"expected d >= 0, got {d}")
    return d * (d + 1) // 2
