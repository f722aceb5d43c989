"""Non-singular plane tropical curves and their dual subdivisions.

A curve is the corner locus of a max-plus polynomial.  Construction
computes the regular subdivision induced by the lifted coefficients by
an exact pair scan: for every pair of support points the locus where
both monomials are maximal is a (possibly empty) interval on their tie
line, and nonempty intervals are exactly the edges of the subdivision.
Everything is rational arithmetic; singular inputs are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import DegeneratePolygon, DegreeUnset, SingularSubdivision
from .geometry import (
    IVec,
    Point,
    add,
    canonical_direction,
    convex_hull,
    det2,
    dot2,
    hull_lattice_points,
    point_strictly_in_hull,
    polygon_twice_area,
    primitive,
    rot90,
    sub,
    sub_i,
    triangle_twice_area,
)

# Outward directions of the three boundary strata of the projective
# compactification, keyed by stratum label.
STRATA = ("x", "y", "z")
STRATUM_RAY_DIR = {"x": (-1, 0), "y": (0, -1), "z": (1, 1)}
STRATUM_GLUE = {"x": (1, 0), "y": (0, 1), "z": (1, 1)}


class TropicalPolynomial:
    """max_{(i,j)} (a_ij + i*x + j*y) with exact rational coefficients."""

    def __init__(self, coefficients: Mapping[IVec, Fraction | int]):
        if not coefficients:
            raise ValueError("empty support")
        self.coefficients: dict[IVec, Fraction] = {}
        for (i, j), a in coefficients.items():
            if i < 0 or j < 0:
                raise ValueError(f"support point {(i, j)} outside the positive quadrant")
            self.coefficients[(int(i), int(j))] = Fraction(a)
        self.support = frozenset(self.coefficients)

    def term(self, ij: IVec, point: Point) -> Fraction:
        return self.coefficients[ij] + ij[0] * point[0] + ij[1] * point[1]

    def value(self, point: Point) -> Fraction:
        return max(self.term(ij, point) for ij in self.coefficients)

    def argmax(self, point: Point) -> tuple[IVec, ...]:
        best = self.value(point)
        return tuple(sorted(ij for ij in self.coefficients if self.term(ij, point) == best))

    def translated(self, offset: Point) -> "TropicalPolynomial":
        dx, dy = offset
        return TropicalPolynomial(
            {(i, j): a - i * Fraction(dx) - j * Fraction(dy) for (i, j), a in self.coefficients.items()}
        )


@dataclass(frozen=True)
class SubdivisionEdge:
    points: tuple[IVec, IVec]  # ordered so rot90(q - p) is the curve-edge direction
    interior: bool


@dataclass(frozen=True)
class DualSubdivision:
    polygon: tuple[IVec, ...]            # hull vertices, counterclockwise
    lattice_points: tuple[IVec, ...]
    cells: tuple[tuple[IVec, IVec, IVec], ...]
    edges: tuple[SubdivisionEdge, ...]
    nonsingular: bool

    def cells_of_point(self, p: IVec) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.cells) if p in c)

    def edges_of_point(self, p: IVec) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.edges) if p in e.points)


@dataclass(frozen=True)
class Edge:
    index: int
    tail: int                # vertex index (anchor for rays)
    head: int | None         # None for rays
    direction: IVec          # primitive; tail->head for bounded, outward for rays
    dual: tuple[IVec, IVec]  # rot90(dual[1] - dual[0]) == direction
    bounded: bool


@dataclass(frozen=True)
class PrimitiveCycle:
    center: IVec
    edges: frozenset[int]


@dataclass(frozen=True)
class ComplementComponent:
    dual_point: IVec
    bounded: bool
    boundary_edges: frozenset[int]


class TropicalCurve:
    """Vertices, edges and dual subdivision of a non-singular curve.

    Instances are immutable in practice; comparison is by identity.
    """

    def __init__(self, poly, vertices, edges, dual, degree):
        self.poly: TropicalPolynomial = poly
        self.vertices: tuple[Point, ...] = vertices
        self.edges: tuple[Edge, ...] = edges
        self.dual: DualSubdivision = dual
        self.degree: int | None = degree
        self.vertex_edges: tuple[tuple[int, ...], ...] = tuple(
            tuple(e.index for e in edges if e.tail == v or e.head == v) for v in range(len(vertices))
        )
        self.bounded_edges: tuple[int, ...] = tuple(e.index for e in edges if e.bounded)
        self.bounded_index: dict[int, int] = {eid: k for k, eid in enumerate(self.bounded_edges)}
        self._edge_by_dual = {frozenset(e.dual): e.index for e in edges}
        self._vertex_by_point = {p: i for i, p in enumerate(vertices)}
        # dual cell of each vertex, aligned by construction
        self.vertex_cell: tuple[tuple[IVec, IVec, IVec], ...] = dual.cells
        self._cells_of_dual_edge: dict[frozenset, tuple[int, ...]] = {}
        for ci, cell in enumerate(dual.cells):
            for a in range(3):
                for b in range(a + 1, 3):
                    key = frozenset((cell[a], cell[b]))
                    self._cells_of_dual_edge.setdefault(key, ())
                    self._cells_of_dual_edge[key] += (ci,)

    # -- basic queries -------------------------------------------------

    def edge_by_dual(self, p: IVec, q: IVec) -> int:
        return self._edge_by_dual[frozenset((p, q))]

    def cells_of_dual_edge(self, p: IVec, q: IVec) -> tuple[int, ...]:
        return self._cells_of_dual_edge[frozenset((p, q))]

    def vertex_at(self, point: Point) -> int | None:
        return self._vertex_by_point.get(point)

    def edge_anchor(self, eid: int) -> Point:
        return self.vertices[self.edges[eid].tail]

    def edge_tmax(self, eid: int) -> Fraction | None:
        """Parameter of the head along the primitive direction (None for rays)."""
        e = self.edges[eid]
        if not e.bounded:
            return None
        a = self.vertices[e.tail]
        b = self.vertices[e.head]
        d = e.direction
        if d[0] != 0:
            return (b[0] - a[0]) / d[0]
        return (b[1] - a[1]) / d[1]

    def edge_point(self, eid: int, t: Fraction) -> Point:
        a = self.edge_anchor(eid)
        d = self.edges[eid].direction
        return (a[0] + d[0] * t, a[1] + d[1] * t)

    def edge_contains(self, eid: int, p: Point, strict: bool = False) -> bool:
        e = self.edges[eid]
        a = self.edge_anchor(eid)
        d = e.direction
        w = sub(p, a)
        if det2(d, w) != 0:
            return False
        t = w[0] / d[0] if d[0] != 0 else w[1] / d[1]
        tmax = self.edge_tmax(eid)
        if strict:
            return t > 0 and (tmax is None or t < tmax)
        return t >= 0 and (tmax is None or t <= tmax)

    def on_curve(self, p: Point) -> bool:
        return len(self.poly.argmax(p)) >= 2

    def dominating(self, p: Point) -> IVec | None:
        am = self.poly.argmax(p)
        return am[0] if len(am) == 1 else None

    def is_honeycomb(self) -> bool:
        return all(canonical_direction(e.direction) in ((1, 0), (0, 1), (1, 1)) for e in self.edges)

    def require_degree(self) -> int:
        if self.degree is None:
            raise DegreeUnset("operation needs a curve of degree d (Newton polygon d*simplex)")
        return self.degree

    # -- projective boundary data ---------------------------------------

    def strata_of_point(self, alpha: IVec) -> tuple[str, ...]:
        d = self.require_degree()
        out = []
        if alpha[0] == 0:
            out.append("x")
        if alpha[1] == 0:
            out.append("y")
        if alpha[0] + alpha[1] == d:
            out.append("z")
        return tuple(out)

    def stratum_rays(self, stratum: str) -> list[tuple[Fraction, int]]:
        """Rays escaping through the stratum as (coordinate, edge id), sorted."""
        self.require_degree()
        want = STRATUM_RAY_DIR[stratum]
        out = []
        for e in self.edges:
            if e.bounded or e.direction != want:
                continue
            a = self.vertices[e.tail]
            if stratum == "x":
                coord = a[1]
            elif stratum == "y":
                coord = a[0]
            else:
                coord = a[1] - a[0]
            out.append((coord, e.index))
        out.sort()
        if len({c for c, _ in out}) != len(out):
            raise AssertionError("two rays share a boundary point; curve is singular at infinity")
        return out

    def side_points(self, stratum: str) -> list[IVec]:
        """Lattice points of the Newton polygon side dual to the stratum."""
        d = self.require_degree()
        if stratum == "x":
            return [(0, j) for j in range(d + 1)]
        if stratum == "y":
            return [(i, 0) for i in range(d + 1)]
        return [(i, d - i) for i in range(d + 1)]

    def stratum_interval_regions(self, stratum: str) -> list[IVec]:
        """Dual points of the regions cut on the stratum, in coordinate order.

        A stratum carries len(rays)+1 intervals; interval k is bounded by
        the k-th and (k+1)-th ray endpoints.
        """
        rays = self.stratum_rays(stratum)
        side = self.side_points(stratum)
        test_coords = []
        for k in range(len(rays) + 1):
            if k == 0:
                test_coords.append(rays[0][0] - 1)
            elif k == len(rays):
                test_coords.append(rays[-1][0] + 1)
            else:
                test_coords.append((rays[k - 1][0] + rays[k][0]) / 2)
        out = []
        for c in test_coords:
            # dominance among the side's monomials in the stratum chart
            def val(pt, c=c):
                a = self.poly.coefficients[pt]
                if stratum == "x":
                    return a + pt[1] * c
                if stratum == "y":
                    return a + pt[0] * c
                # on the z stratum, classes [a : i : j] with i+j = d; chart
                # coordinate c = y - x weights the second index
                return a + pt[1] * c
            best = max(side, key=lambda pt: (val(pt), pt))
            ties = [pt for pt in side if val(pt) == val(best)]
            if len(ties) != 1:
                raise AssertionError("stratum interval has no unique region")
            out.append(best)
        return out

    # -- region sampling -------------------------------------------------

    def region_point(self, alpha: IVec) -> Point:
        """A rational point strictly inside the complement component of alpha."""
        if alpha not in self.dual.lattice_points:
            raise ValueError(f"{alpha} is not a lattice point of the Newton polygon")
        corner_ids = [v for v, cell in enumerate(self.vertex_cell) if alpha in cell]
        n = len(corner_ids)
        cx = sum((self.vertices[v][0] for v in corner_ids), Fraction(0)) / n
        cy = sum((self.vertices[v][1] for v in corner_ids), Fraction(0)) / n
        base = (cx, cy)
        if point_strictly_in_hull(list(self.dual.polygon), alpha):
            if self.dominating(base) == alpha:
                return base
            raise AssertionError("centroid of a bounded region is not interior")
        push = self._recession_direction(alpha)
        t = Fraction(1)
        for _ in range(80):
            cand = (base[0] + push[0] * t, base[1] + push[1] * t)
            if self.dominating(cand) == alpha:
                return cand
            t *= 2
        raise AssertionError(f"could not sample the unbounded region of {alpha}")

    def _recession_direction(self, alpha: IVec) -> IVec:
        hull = list(self.dual.polygon)
        n = len(hull)
        normals = []
        for i in range(n):
            a, b = hull[i], hull[(i + 1) % n]
            u = sub_i(b, a)
            if det2(u, sub_i(alpha, a)) == 0 and 0 <= dot2(u, sub_i(alpha, a)) <= dot2(u, u):
                nv = rot90(u)
                normals.append((-nv[0], -nv[1]))  # outward for a ccw hull
        if not normals:
            raise AssertionError(f"{alpha} is not on the hull boundary")
        sx = sum(v[0] for v in normals)
        sy = sum(v[1] for v in normals)
        return primitive((sx, sy))

    def translated(self, offset: Point) -> "TropicalCurve":
        off = (Fraction(offset[0]), Fraction(offset[1]))
        verts = tuple(add(v, off) for v in self.vertices)
        return TropicalCurve(self.poly.translated(off), verts, self.edges, self.dual, self.degree)


# -- construction -------------------------------------------------------


def _tie_line(p: IVec, q: IVec, ap: Fraction, aq: Fraction) -> tuple[Point, IVec]:
    """Base point and direction of {X : ap + p.X = aq + q.X}."""
    n = sub_i(p, q)
    c = aq - ap
    if n[0] != 0:
        base = (Fraction(c, n[0]), Fraction(0))
    else:
        base = (Fraction(0), Fraction(c, n[1]))
    return base, rot90(sub_i(q, p))


def curve_from_polynomial(poly: TropicalPolynomial) -> TropicalCurve:
    """Corner locus plus dual subdivision; rejects singular inputs."""
    support = sorted(poly.support)
    hull = convex_hull(support)
    if len(hull) < 3:
        raise DegeneratePolygon("support hull is not 2-dimensional")
    coeffs = poly.coefficients

    dual_edges = []  # (p, q, lo, hi, direction) with lo/hi None for unbounded
    for i, p in enumerate(support):
        for q in support[i + 1:]:
            base, d = _tie_line(p, q, coeffs[p], coeffs[q])
            lo = hi = None
            feasible = True
            collinear_tie = False
            for s in support:
                if s == p or s == q:
                    continue
                g0 = coeffs[p] - coeffs[s] + dot2(sub_i(p, s), base)
                g1 = dot2(sub_i(p, s), d)
                if g1 == 0:
                    if g0 < 0:
                        feasible = False
                        break
                    if g0 == 0:
                        collinear_tie = True
                elif g1 > 0:
                    bound = Fraction(-g0, g1)
                    if lo is None or bound > lo:
                        lo = bound
                else:
                    bound = Fraction(-g0, g1)
                    if hi is None or bound < hi:
                        hi = bound
            if not feasible or (lo is not None and hi is not None and lo >= hi):
                continue
            if collinear_tie or primitive(sub_i(q, p)) != sub_i(q, p):
                raise SingularSubdivision(f"dual edge {p}-{q} carries weight > 1")
            dual_edges.append((p, q, base, d, lo, hi))

    # vertices: finite interval endpoints, deduplicated; dual cell = argmax there
    vertex_points: dict[Point, tuple[IVec, ...]] = {}
    for p, q, base, d, lo, hi in dual_edges:
        for t in (lo, hi):
            if t is None:
                continue
            pt = (base[0] + d[0] * t, base[1] + d[1] * t)
            if pt not in vertex_points:
                cell = poly.argmax(pt)
                if len(cell) != 3:
                    raise SingularSubdivision(
                        f"vertex at {pt} is dual to a cell with {len(cell)} points"
                    )
                if triangle_twice_area(*cell) != 1:
                    raise SingularSubdivision(f"cell {cell} has Euclidean area > 1/2")
                vertex_points[pt] = cell

    order = sorted(vertex_points)
    vertex_index = {pt: k for k, pt in enumerate(order)}
    cells = tuple(vertex_points[pt] for pt in order)

    lattice = hull_lattice_points(hull)
    used = {v for cell in cells for v in cell}
    missing = [pt for pt in lattice if pt not in used]
    if missing:
        raise SingularSubdivision(f"lattice points {missing} are not vertices of the subdivision")
    # unimodular cells tile the polygon iff their count equals its twice-area
    if len(cells) != polygon_twice_area(hull):
        raise SingularSubdivision("subdivision does not tile the Newton polygon")

    # assemble curve edges (sorted by dual pair for determinism)
    dual_edges.sort(key=lambda rec: tuple(sorted((rec[0], rec[1]))))
    edges = []
    sub_edges = []
    for p, q, base, d, lo, hi in dual_edges:
        if lo is not None and hi is not None:
            a = (base[0] + d[0] * lo, base[1] + d[1] * lo)
            b = (base[0] + d[0] * hi, base[1] + d[1] * hi)
            idx = len(edges)
            edges.append(
                Edge(idx, vertex_index[a], vertex_index[b], primitive(d), (p, q), True)
            )
            sub_edges.append(SubdivisionEdge((p, q), True))
        else:
            if lo is None and hi is None:
                raise SingularSubdivision("support line without any bounding monomial")
            if hi is None:
                anchor = (base[0] + d[0] * lo, base[1] + d[1] * lo)
                out_dir, dual_pair = primitive(d), (p, q)
            else:
                anchor = (base[0] + d[0] * hi, base[1] + d[1] * hi)
                out_dir, dual_pair = primitive((-d[0], -d[1])), (q, p)
            idx = len(edges)
            edges.append(Edge(idx, vertex_index[anchor], None, out_dir, dual_pair, False))
            sub_edges.append(SubdivisionEdge(dual_pair, False))

    degree = _simplex_degree(hull)
    dual = DualSubdivision(tuple(hull), tuple(lattice), cells, tuple(sub_edges), True)
    curve = TropicalCurve(poly, tuple(order), tuple(edges), dual, degree)
    _verify_curve(curve)
    return curve


def _simplex_degree(hull: list[IVec]) -> int | None:
    if len(hull) != 3 or (0, 0) not in hull:
        return None
    rest = sorted(set(hull) - {(0, 0)})
    if len(rest) != 2:
        return None
    d = rest[1][0]
    if d >= 1 and rest == [(0, d), (d, 0)]:
        return d
    return None


def _verify_curve(curve: TropicalCurve) -> None:
    area2 = polygon_twice_area(list(curve.dual.polygon))
    if len(curve.vertices) != area2:
        raise SingularSubdivision(
            f"{len(curve.vertices)} vertices for a polygon of twice-area {area2}"
        )
    for v, incident in enumerate(curve.vertex_edges):
        if len(incident) != 3:
            raise AssertionError(f"vertex {v} is {len(incident)}-valent")
        sx = sy = 0
        for eid in incident:
            e = curve.edges[eid]
            d = e.direction
            if e.bounded and e.head == v:
                d = (-d[0], -d[1])  # inward at head; flip to point away from v
            sx += d[0]
            sy += d[1]
        if (sx, sy) != (0, 0):
            raise AssertionError(f"balancing fails at vertex {v}")
    for e in curve.edges:
        dual_dir = sub_i(e.dual[1], e.dual[0])
        if rot90(dual_dir) != e.direction:
            raise AssertionError(f"edge {e.index} direction is not the dual rotation")


def honeycomb(d: int) -> TropicalCurve:
    """Canonical degree-d honeycomb from the concave quadratic lift."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    coeffs = {
        (i, j): Fraction(-(i * i + i * j + j * j))
        for i in range(d + 1)
        for j in range(d + 1 - i)
    }
    curve = curve_from_polynomial(TropicalPolynomial(coeffs))
    if not curve.is_honeycomb():
        raise AssertionError("quadratic lift did not produce a honeycomb")
    return curve


def primitive_cycles(curve: TropicalCurve) -> list[PrimitiveCycle]:
    """One cycle per interior lattice point of the Newton polygon."""
    hull = list(curve.dual.polygon)
    cycles = []
    for alpha in curve.dual.lattice_points:
        if not point_strictly_in_hull(hull, alpha):
            continue
        eids = frozenset(
            curve.edge_by_dual(*se.points)
            for se in curve.dual.edges
            if alpha in se.points and se.interior
        )
        _check_cycle(curve, eids, alpha)
        cycles.append(PrimitiveCycle(alpha, eids))
    return cycles


def _check_cycle(curve: TropicalCurve, eids: frozenset[int], alpha: IVec) -> None:
    degree_count: dict[int, int] = {}
    for eid in eids:
        e = curve.edges[eid]
        if not e.bounded:
            raise AssertionError(f"cycle around {alpha} uses an unbounded edge")
        for v in (e.tail, e.head):
            degree_count[v] = degree_count.get(v, 0) + 1
    if any(c != 2 for c in degree_count.values()):
        raise AssertionError(f"edges around {alpha} do not close up")
    # connectivity
    verts = list(degree_count)
    reached = {verts[0]}
    frontier = [verts[0]]
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for eid in eids:
        e = curve.edges[eid]
        adj[e.tail].append(e.head)
        adj[e.head].append(e.tail)
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in reached:
                reached.add(w)
                frontier.append(w)
    if len(reached) != len(verts):
        raise AssertionError(f"cycle around {alpha} is disconnected")


def complement_components(curve: TropicalCurve) -> list[ComplementComponent]:
    """One component of the curve complement per lattice point of the polygon."""
    curve.require_degree()
    hull = list(curve.dual.polygon)
    out = []
    for alpha in curve.dual.lattice_points:
        eids = frozenset(
            curve.edge_by_dual(*se.points) for se in curve.dual.edges if alpha in se.points
        )
        out.append(
            ComplementComponent(alpha, point_strictly_in_hull(hull, alpha), eids)
        )
    return out
