"""Exact 2D predicates over rationals and small lattice-polygon utilities.

Everything here is Fraction/int arithmetic; no floats.  Points are
(Fraction, Fraction) pairs, lattice points are (int, int) pairs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Point = tuple[Fraction, Fraction]
IVec = tuple[int, int]


def frac_point(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def add(p: Point, q) -> Point:
    return (p[0] + q[0], p[1] + q[1])


def sub(p: Point, q) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def scale(p, t) -> Point:
    return (p[0] * t, p[1] * t)


def det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot2(u, v):
    return u[0] * v[0] + u[1] * v[1]


def primitive(v: IVec) -> IVec:
    """Primitive integer vector parallel to v (keeps orientation)."""
    if v == (0, 0):
        raise ValueError("zero vector has no primitive form")
    g = gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g)


def rot90(v: IVec) -> IVec:
    """Counterclockwise quarter turn."""
    return (-v[1], v[0])


def canonical_direction(v: IVec) -> IVec:
    """Primitive representative of the unoriented direction class of v."""
    p = primitive(v)
    if p[0] > 0 or (p[0] == 0 and p[1] > 0):
        return p
    return (-p[0], -p[1])


def convex_hull(points: list[IVec]) -> list[IVec]:
    """Monotone-chain hull, counterclockwise, without repeated endpoint."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list[IVec] = []
        for p in seq:
            while len(out) >= 2 and det2(sub_i(out[-1], out[-2]), sub_i(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(list(reversed(pts)))
    return lower[:-1] + upper[:-1]


def sub_i(p: IVec, q: IVec) -> IVec:
    return (p[0] - q[0], p[1] - q[1])


def polygon_twice_area(hull: list[IVec]) -> int:
    a = 0
    n = len(hull)
    for i in range(n):
        a += det2(hull[i], hull[(i + 1) % n])
    return abs(a)


def point_in_hull(hull: list[IVec], p: IVec) -> bool:
    """Closed containment test for a counterclockwise hull."""
    n = len(hull)
    if n == 1:
        return p == hull[0]
    if n == 2:
        u = sub_i(hull[1], hull[0])
        w = sub_i(p, hull[0])
        return det2(u, w) == 0 and 0 <= dot2(u, w) <= dot2(u, u)
    for i in range(n):
        if det2(sub_i(hull[(i + 1) % n], hull[i]), sub_i(p, hull[i])) < 0:
            return False
    return True


def point_strictly_in_hull(hull: list[IVec], p: IVec) -> bool:
    n = len(hull)
    if n < 3:
        return False
    for i in range(n):
        if det2(sub_i(hull[(i + 1) % n], hull[i]), sub_i(p, hull[i])) <= 0:
            return False
    return True


def hull_lattice_points(hull: list[IVec]) -> list[IVec]:
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            if point_in_hull(hull, (x, y)):
                out.append((x, y))
    return out


def triangle_twice_area(a: IVec, b: IVec, c: IVec) -> int:
    return abs(det2(sub_i(b, a), sub_i(c, a)))


def on_segment(a: Point, b: Point, p: Point) -> bool:
    """Closed segment membership (a != b assumed)."""
    u = sub(b, a)
    w = sub(p, a)
    if det2(u, w) != 0:
        return False
    t = dot2(u, w)
    return 0 <= t <= dot2(u, u)


def intersect_param_lines(p: Point, d, q: Point, e):
    """Solve p + t*d = q + s*e.

    Returns ('point', t, s), ('collinear',) or None for parallel disjoint
    supporting lines.
    """
    dd = det2(d, e)
    w = sub(q, p)
    if dd == 0:
        if det2(d, w) == 0:
            return ("collinear",)
        return None
    t = Fraction(det2(w, e), dd)
    s = Fraction(det2(w, d), dd)
    return ("point", t, s)


def lex_key(p: Point):
    return (p[0], p[1])
