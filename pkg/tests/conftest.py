"""Shared fixtures: the branch-covering surface pool and independent oracles.

The pool is generated once per session from the family solver: for every
branch and level k <= 6, walk toward both interval endpoints and keep the
first members with b <= 400 that land strictly inside the branch.  The
monomial counter is the independent section-count oracle: h^0 of a degree-d
divisor on P(a,b,c) is the number of monomials x^i y^j z^l of weighted
degree d, which never touches the polytope machinery under test.
"""

from __future__ import annotations

import pytest

from effcone import (
    BRANCHES,
    FamilyRequest,
    branch_interval,
    classify_surface,
    make_surface,
    solve_family,
)


def monomial_count(a: int, b: int, c: int, degree: int) -> int:
    """#{(i, j, l) >= 0 : a*i + b*j + c*l = degree}, by direct enumeration."""
    total = 0
    for l in range(degree // c + 1):
        rem_l = degree - c * l
        for j in range(rem_l // b + 1):
            if (rem_l - b * j) % a == 0:
                total += 1
    return total


def brute_count(vertices) -> int:
    """Lattice points of a triangle by bounding-box sign checks (small inputs)."""
    import math

    xs = [v.x for v in vertices]
    ys = [v.y for v in vertices]
    lo_x, hi_x = math.floor(min(xs)), math.ceil(max(xs))
    lo_y, hi_y = math.floor(min(ys)), math.ceil(max(ys))
    (x0, y0), (x1, y1), (x2, y2) = [(v.x, v.y) for v in vertices]

    def side(px, py, qx, qy, rx, ry):
        return (qx - px) * (ry - py) - (qy - py) * (rx - px)

    orient = side(x0, y0, x1, y1, x2, y2)
    count = 0
    for ix in range(lo_x, hi_x + 1):
        for iy in range(lo_y, hi_y + 1):
            s0 = side(x0, y0, x1, y1, ix, iy)
            s1 = side(x1, y1, x2, y2, ix, iy)
            s2 = side(x2, y2, x0, y0, ix, iy)
            if orient > 0:
                inside = s0 >= 0 and s1 >= 0 and s2 >= 0
            elif orient < 0:
                inside = s0 <= 0 and s1 <= 0 and s2 <= 0
            else:
                # Degenerate: point collinear with the (possibly repeated)
                # vertices and within their hull's bounding box.
                if s0 != 0 or side(x0, y0, x2, y2, ix, iy) != 0:
                    continue
                inside = min(xs) <= ix <= max(xs) and min(ys) <= iy <= max(ys)
            if inside:
                count += 1
    return count


def build_pool():
    """(surface, branch, k) for all strict-interior family members, b <= 400."""
    pool = {}
    for k in range(1, 7):
        for branch in BRANCHES:
            lo, hi = branch_interval(k, branch)
            for tau, end in ((1, lo), (-1, hi)):
                request = FamilyRequest(
                    alpha=end.denominator, beta=end.numerator, tau=tau,
                    count=2, interval=(lo, hi),
                )
                try:
                    members = solve_family(request)
                except ValueError:
                    continue
                for surface in members:
                    if surface.b > 400 or surface.bp_ratio in (lo, hi):
                        continue
                    pool.setdefault((surface.b, surface.c), (surface, branch, k))
    return sorted(pool.values(), key=lambda item: (item[0].b, item[0].c))


@pytest.fixture(scope="session")
def pool():
    entries = build_pool()
    assert len(entries) >= 20
    for surface, branch, k in entries:
        found = classify_surface(surface)
        assert len(found) == 1
        assert (found[0].branch, found[0].k) == (branch, k)
    return entries


@pytest.fixture(scope="session")
def named_surfaces():
    """The worked examples; the first two sit exactly on branch boundaries."""
    return [make_surface(4, b, c) for b, c in ((5, 7), (7, 9), (13, 23), (7, 13))]


# Triples (S_lower, S_center, S_upper) inside one branch, ordered by the
# abscissa b/(-p), additionally satisfying c_lower >= c_center and
# b_upper >= b_center so that the two supremum comparisons carry the
# prefactors along.  See the monotonicity test for the inequalities.
MONOTONE_TRIPLES = (
    ((4, 19, 33), (4, 13, 23), (4, 49, 87)),      # interior of I'+ at k = 1
    ((4, 59, 105), (4, 23, 41), (4, 23, 45)),     # interior of I''- at k = 1
    ((4, 227, 309), (4, 83, 113), (4, 87, 121)),  # interior of I'- at k = 2
)


@pytest.fixture(scope="session")
def monotone_triples():
    out = []
    for lower, center, upper in MONOTONE_TRIPLES:
        s_lower, s_center, s_upper = (make_surface(*w) for w in (lower, center, upper))
        assert s_lower.bp_ratio < s_center.bp_ratio < s_upper.bp_ratio
        assert s_lower.c >= s_center.c
        assert s_upper.b >= s_center.b
        out.append((s_lower, s_center, s_upper))
    return out


def build_small_a_pool(per_a: int = 10):
    """Valid lower-bound surfaces with a in {1, 2, 3}: p >= 0, or
    q = a - 1 with (-p)a/b <= 1."""
    from fractions import Fraction
    from math import gcd

    surfaces = []
    for a in (1, 2, 3):
        found = 0
        b = a + 1 if a > 1 else 2
        while found < per_a:
            if gcd(a, b) == 1:
                c = b + 1
                while True:
                    if gcd(a, c) == 1 and gcd(b, c) == 1:
                        surface = make_surface(a, b, c)
                        if surface.p >= 0 or (
                            surface.q == a - 1
                            and Fraction(-surface.p * a, surface.b) <= 1
                        ):
                            surfaces.append(surface)
                            found += 1
                            break
                    c += 1
            b += 1
    return surfaces


@pytest.fixture(scope="session")
def small_a_pool():
    surfaces = build_small_a_pool()
    assert len(surfaces) == 30
    return surfaces
