"""Exact lattice-point counting for triangles with rational vertices.

Two independent counters are provided on purpose:

* :func:`count_points_rowscan` sweeps integer rows and clips each row
  against the edges with exact integer arithmetic.  It works for any
  rational triangle, including degenerate ones (segments, points).
* :func:`count_points_pick` applies Pick's theorem and therefore only
  accepts non-degenerate triangles with integral vertices.

Keeping both around lets the test-suite cross-validate them on the large
family of integral triangles where they must agree.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .numerics import as_rational

__all__ = [
    "RationalPoint",
    "RationalTriangle",
    "point",
    "triangle",
    "count_points_rowscan",
    "count_points_pick",
    "contains_point",
    "ROWSCAN_WARN_ROWS",
]

#: Row count above which :func:`count_points_rowscan` emits a warning before
#: proceeding; a scan this tall is almost certainly a mis-scaled polytope.
ROWSCAN_WARN_ROWS = 10**8


@dataclass(frozen=True)
class RationalPoint:
    """A point in the plane with exact rational coordinates."""

    x: Fraction
    y: Fraction


@dataclass(frozen=True)
class RationalTriangle:
    """A (possibly degenerate) triangle given by three rational vertices."""

    vertices: tuple[RationalPoint, RationalPoint, RationalPoint]

    @property
    def is_integral(self) -> bool:
        return all(v.x.denominator == 1 and v.y.denominator == 1 for v in self.vertices)


def point(x, y) -> RationalPoint:
    """Build a :class:`RationalPoint`, coercing coordinates to Fractions."""
    return RationalPoint(as_rational(x), as_rational(y))


def triangle(p0, p1, p2) -> RationalTriangle:
    """Build a :class:`RationalTriangle` from three points or ``(x, y)`` pairs."""
    pts = []
    for p in (p0, p1, p2):
        if isinstance(p, RationalPoint):
            pts.append(p)
        else:
            x, y = p
            pts.append(point(x, y))
    return RationalTriangle((pts[0], pts[1], pts[2]))


def _edge_record(p: RationalPoint, q: RationalPoint):
    """Precompute one edge in pure-integer form.

    Returns ``(ymin_n, ymin_d, ymax_n, ymax_d, horizontal, data)`` where for a
    non-horizontal edge ``data = (A, B, D)`` encodes the intersection abscissa
    ``x(y) = (A + B*y) / D`` with ``D > 0``, and for a horizontal edge
    ``data = ((xn0, xd0), (xn1, xd1))`` holds both endpoint abscissas.
    """
    if p.y <= q.y:
        lo, hi = p.y, q.y
    else:
        lo, hi = q.y, p.y
    if p.y == q.y:
        data = ((p.x.numerator, p.x.denominator), (q.x.numerator, q.x.denominator))
        return (lo.numerator, lo.denominator, hi.numerator, hi.denominator, True, data)
    # x(y) = p.x + (q.x - p.x) * (y - p.y) / (q.y - p.y); clear denominators so
    # the row loop never touches Fraction objects.
    du = q.y - p.y
    dv = q.x - p.x
    c = p.x * du - dv * p.y
    scale = lcm(c.denominator, dv.denominator, du.denominator)
    a = c.numerator * (scale // c.denominator)
    b = dv.numerator * (scale // dv.denominator)
    d = du.numerator * (scale // du.denominator)
    if d < 0:
        a, b, d = -a, -b, -d
    return (lo.numerator, lo.denominator, hi.numerator, hi.denominator, False, (a, b, d))


def count_points_rowscan(tri: RationalTriangle) -> int:
    """Count integer points in the closed convex hull of ``tri`` by scanning
    integer rows and clipping each row against the edges.

    Exact for arbitrary rational vertices; degenerate triangles (collinear
    vertices, repeated vertices, single points) are handled uniformly.
    """
    v0, v1, v2 = tri.vertices
    ymin = min(v0.y, v1.y, v2.y)
    ymax = max(v0.y, v1.y, v2.y)
    y_start = -((-ymin.numerator) // ymin.denominator)  # ceil(ymin)
    y_end = ymax.numerator // ymax.denominator  # floor(ymax)
    if y_end < y_start:
        return 0
    n_rows = y_end - y_start + 1
    if n_rows > ROWSCAN_WARN_ROWS:
        warnings.warn(
            f"rowscan over {n_rows} rows (threshold {ROWSCAN_WARN_ROWS}); "
            "this will be slow",
            stacklevel=2,
        )

    edges = [_edge_record(v0, v1), _edge_record(v1, v2), _edge_record(v2, v0)]
    total = 0
    for y in range(y_start, y_end + 1):
        lo_n = lo_d = hi_n = hi_d = None
        for ymin_n, ymin_d, ymax_n, ymax_d, horizontal, data in edges:
            # Edge active at this row iff ymin <= y <= ymax (cross-multiplied).
            if ymin_n > y * ymin_d or y * ymax_d > ymax_n:
                continue
            if horizontal:
                cands = data
            else:
                a, b, d = data
                cands = ((a + b * y, d),)
            for xn, xd in cands:
                if lo_n is None:
                    lo_n, lo_d, hi_n, hi_d = xn, xd, xn, xd
                    continue
                if xn * lo_d < lo_n * xd:
                    lo_n, lo_d = xn, xd
                if xn * hi_d > hi_n * xd:
                    hi_n, hi_d = xn, xd
        if lo_n is None:
            continue
        # floor(hi) - ceil(lo) + 1 integer abscissas in [lo, hi].
        row = hi_n // hi_d + ((-lo_n) // lo_d) + 1
        if row > 0:
            total += row
    return total


def count_points_pick(tri: RationalTriangle) -> int:
    """Count integer points in ``tri`` via Pick's theorem.

    Only valid for non-degenerate triangles with integral vertices; raises
    :class:`ValueError` otherwise.  With ``2*Area = |cross|`` and ``B`` the
    number of boundary points, the total interior+boundary count is
    ``(|cross| + B) / 2 + 1``.
    """
    if not tri.is_integral:
        raise ValueError("Pick's theorem requires integral vertices")
    v0, v1, v2 = tri.vertices
    x0, y0 = int(v0.x), int(v0.y)
    x1, y1 = int(v1.x), int(v1.y)
    x2, y2 = int(v2.x), int(v2.y)
    cross = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)
    if cross == 0:
        raise ValueError("Pick's theorem requires a non-degenerate triangle")
    boundary = (
        gcd(abs(x1 - x0), abs(y1 - y0))
        + gcd(abs(x2 - x1), abs(y2 - y1))
        + gcd(abs(x0 - x2), abs(y0 - y2))
    )
    return (abs(cross) + boundary) // 2 + 1


def _cross(ox, oy, ax, ay, bx, by) -> Fraction:
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def contains_point(tri: RationalTriangle, pt) -> bool:
    """Exact membership test for the closed convex hull of ``tri``."""
    if not isinstance(pt, RationalPoint):
        x, y = pt
        pt = point(x, y)
    v0, v1, v2 = tri.vertices
    orient = _cross(v0.x, v0.y, v1.x, v1.y, v2.x, v2.y)
    if orient != 0:
        c0 = _cross(v0.x, v0.y, v1.x, v1.y, pt.x, pt.y)
        c1 = _cross(v1.x, v1.y, v2.x, v2.y, pt.x, pt.y)
        c2 = _cross(v2.x, v2.y, v0.x, v0.y, pt.x, pt.y)
        if orient > 0:
            return c0 >= 0 and c1 >= 0 and c2 >= 0
        return c0 <= 0 and c1 <= 0 and c2 <= 0
    # Degenerate: the hull is the segment between the two extreme vertices
    # (or a single point).  Order lexicographically and test collinearity
    # plus the parameter range along the segment.
    vs = sorted(tri.vertices, key=lambda v: (v.x, v.y))
    a, b = vs[0], vs[2]
    dx, dy = b.x - a.x, b.y - a.y
    if dx == 0 and dy == 0:
        return pt.x == a.x and pt.y == a.y
    if dx * (pt.y - a.y) - dy * (pt.x - a.x) != 0:
        return False
    t_num = dx * (pt.x - a.x) + dy * (pt.y - a.y)
    return 0 <= t_num <= dx * dx + dy * dy
