"""Validated weighted projective plane surfaces P(a,b,c) and their divisor
polytopes.

A surface P(a,b,c) with pairwise-coprime weights a < b < c is stored together
with the decomposition c = p*a + q*b, where q is the unique residue of
c*b^(-1) mod a in [0, a) and p = (c - q*b) / a (an integer, possibly
negative).  Three one-parameter divisor families drive everything downstream:

* family "B":  n*b*D_x  (degree n*a*b sections),
* family "C":  n*c*D_x  (degree n*a*c sections),
* family "AZ": n*a*D_z  (degree n*a*c sections),

where D_x and D_z are the coordinate divisors of weights a and c.  Each
divisor's global sections biject with lattice points of an explicit rational
triangle; :func:`h0` counts them with the exact rowscan counter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .lattice import RationalTriangle, count_points_rowscan, triangle

__all__ = [
    "FAMILY_B",
    "FAMILY_C",
    "FAMILY_AZ",
    "FAMILIES",
    "WeightedSurface",
    "DivisorSpec",
    "make_surface",
    "polytope",
    "h0",
]

FAMILY_B = "B"
FAMILY_C = "C"
FAMILY_AZ = "AZ"
FAMILIES = (FAMILY_B, FAMILY_C, FAMILY_AZ)


@dataclass(frozen=True)
class WeightedSurface:
    """P(a,b,c) with the derived decomposition c = p*a + q*b.

    Construct via :func:`make_surface`, which computes p and q; the
    ``__post_init__`` re-checks every invariant so that hand-built instances
    cannot be inconsistent.
    """

    a: int
    b: int
    c: int
    p: int
    q: int

    def __post_init__(self) -> None:
        if not (0 < self.a < self.b < self.c):
            raise ValueError(f"require 0 < a < b < c, got ({self.a}, {self.b}, {self.c})")
        if (
            gcd(self.a, self.b) != 1
            or gcd(self.a, self.c) != 1
            or gcd(self.b, self.c) != 1
        ):
            raise ValueError(f"weights ({self.a}, {self.b}, {self.c}) are not pairwise coprime")
        if not 0 <= self.q < self.a:
            raise ValueError(f"q = {self.q} outside [0, {self.a})")
        if self.p * self.a + self.q * self.b != self.c:
            raise ValueError(
                f"inconsistent decomposition: {self.p}*{self.a} + {self.q}*{self.b} != {self.c}"
            )
        # For valid weights a negative p forces q != 1 (else c = a*p + b < b).
        if self.p < 0 and self.q == 1:
            raise AssertionError("p < 0 with q = 1 cannot occur for valid weights")

    @property
    def s(self) -> Fraction:
        """The slope parameter b/c in (0, 1)."""
        return Fraction(self.b, self.c)

    @property
    def bp_ratio(self) -> Fraction:
        """The classification abscissa b/(-p); only defined when p < 0."""
        if self.p >= 0:
            raise ValueError(f"b/(-p) requires p < 0, got p = {self.p}")
        return Fraction(self.b, -self.p)

    def __repr__(self) -> str:  # compact, matches the P(a,b,c) notation
        return f"P({self.a},{self.b},{self.c})"


@dataclass(frozen=True)
class DivisorSpec:
    """The n-th member of one of the three divisor families."""

    family: str
    n: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.n < 1:
            raise ValueError(f"require n >= 1, got {self.n}")


def make_surface(a: int, b: int, c: int) -> WeightedSurface:
    """Validate weights and compute the decomposition c = p*a + q*b.

    >>> make_surface(4, 5, 7)
    P(4,5,7)
    >>> make_surface(4, 5, 7).p, make_surface(4, 5, 7).q
    (-2, 3)
    """
    for name, w in (("a", a), ("b", b), ("c", c)):
        if not isinstance(w, int) or w < 1:
            raise ValueError(f"weight {name} must be a positive integer, got {w!r}")
    if not a < b < c:
        raise ValueError(f"require a < b < c, got ({a}, {b}, {c})")
    if gcd(a, b) != 1 or gcd(a, c) != 1 or gcd(b, c) != 1:
        raise ValueError(f"weights ({a}, {b}, {c}) are not pairwise coprime")
    # q is the residue of c * b^(-1) mod a; pow handles a = 1 (inverse 0).
    q = (c * pow(b, -1, a)) % a
    p = (c - q * b) // a
    return WeightedSurface(a=a, b=b, c=c, p=p, q=q)


def polytope(surface: WeightedSurface, div: DivisorSpec) -> RationalTriangle:
    """The rational triangle whose lattice points are the sections of ``div``.

    Families B and C use shapes valid exactly when a = 4 and q = 3 (the
    regime of the interval classification); other inputs raise rather than
    silently producing a wrong triangle.  Family AZ uses a single shape
    valid for every a.
    """
    a, b, c, p, q = surface.a, surface.b, surface.c, surface.p, surface.q
    n = div.n
    if div.family == FAMILY_B:
        if a != 4 or q != 3:
            raise ValueError(f"family B polytope requires a = 4 and q = 3, got {surface}")
        s = surface.s
        return triangle((0, 0), (-n, 0), (-3 * n * s, 4 * n * s))
    if div.family == FAMILY_C:
        if a != 4 or q != 3:
            raise ValueError(f"family C polytope requires a = 4 and q = 3, got {surface}")
        return triangle((0, 0), (Fraction(-n * c, b), 0), (-3 * n, 4 * n))
    # Family AZ: valid for all a; vertices (0,0), (q*n, -a*n), (-p*a*n/b, -a*n).
    return triangle((0, 0), (q * n, -a * n), (Fraction(-p * a * n, b), -a * n))


@lru_cache(maxsize=None)
def h0(surface: WeightedSurface, div: DivisorSpec) -> int:
    """Number of global sections of ``div``: lattice points of its polytope.

    Cached: sweeps and searches revisit the same (surface, divisor) pairs.
    """
    return count_points_rowscan(polytope(surface, div))
