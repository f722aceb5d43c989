"""Intersection components of two tropical curves and their real lifts.

Components of the set-theoretic intersection are enumerated by exact
pairwise edge intersection and classified into the four supported
kinds: transverse point, isolated vertex of one curve, a bounded edge
inside another edge, and a proper segment overlap.  Anything else (a
shared vertex of both curves, an unbounded overlap, chained overlaps)
raises UnsupportedConfiguration rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curve import TropicalCurve
from .errors import (
    ParallelDirections,
    PhasesDiffer,
    UnsupportedConfiguration,
    WrongKind,
)
from .geometry import Point, det2, intersect_param_lines, lex_key, sub
from .realstruct import RealPhaseStructure, _continuation_edge, _outward_direction, signs_from_phase

TWO_REAL = "two-real"
CONJ_PAIR = "conjugate-pair"
TANGENT_DOUBLE = "tangent-double-real"

TRANSVERSE = "transverse"
ISOLATED_VERTEX = "isolated-vertex"
EDGE_IN_EDGE = "edge-in-edge"
SEGMENT_OVERLAP = "segment-overlap"


@dataclass(frozen=True)
class IntersectionComponent:
    kind: str
    multiplicity: int
    curve_a: TropicalCurve = field(repr=False)
    curve_b: TropicalCurve = field(repr=False)
    point: Point | None = None
    segment: tuple[Point, Point] | None = None
    edge_a: int | None = None
    edge_b: int | None = None
    vertex_owner: str | None = None      # isolated vertex: "a" or "b"
    vertex_id: int | None = None
    inner: str | None = None             # edge-in-edge: whose edge is contained
    end_vertices: tuple[tuple[str, int], tuple[str, int]] | None = None

    def sort_key(self):
        if self.segment is not None:
            return (lex_key(self.segment[0]), lex_key(self.segment[1]))
        return (lex_key(self.point), lex_key(self.point))


@dataclass(frozen=True)
class LiftOutcome:
    """How an intersection component lifts to points of actual curves."""

    variant: str  # "forced-real" | "forced-pairs" | "forced-mixed" | "indeterminate"
    reals: int = 0
    pairs: int = 0
    locations: tuple[Point, ...] | None = None  # None means unlocated
    possible: tuple[str, ...] = ()
    non_real_possible: bool = False
    note: str = ""


def transverse_multiplicity(e_dir, ep_dir) -> int:
    d = det2(e_dir, ep_dir)
    if d == 0:
        raise ParallelDirections(f"{e_dir} and {ep_dir} are parallel")
    return abs(d)


def _edge_interval(curve: TropicalCurve, eid: int):
    e = curve.edges[eid]
    return curve.edge_anchor(eid), e.direction, curve.edge_tmax(eid)


def _param_on(anchor: Point, d, p: Point) -> Fraction:
    w = sub(p, anchor)
    return w[0] / d[0] if d[0] != 0 else w[1] / d[1]


def intersection_components(curve_a: TropicalCurve, curve_b: TropicalCurve):
    """Classified connected components of the set-theoretic intersection."""
    if curve_a is curve_b:
        raise UnsupportedConfiguration("the two curves must be distinct point sets")
    points: dict[Point, set] = {}
    segments: list[tuple[Point, Point, int, int]] = []
    for ea in curve_a.edges:
        pa, da, ta = _edge_interval(curve_a, ea.index)
        for eb in curve_b.edges:
            pb, db, tb = _edge_interval(curve_b, eb.index)
            res = intersect_param_lines(pa, da, pb, db)
            if res is None:
                continue
            if res[0] == "point":
                t, s = res[1], res[2]
                if t < 0 or (ta is not None and t > ta):
                    continue
                if s < 0 or (tb is not None and s > tb):
                    continue
                pt = (pa[0] + da[0] * t, pa[1] + da[1] * t)
                points.setdefault(pt, set()).add(("a", ea.index))
                points[pt].add(("b", eb.index))
                continue
            # collinear supporting lines: intersect the parameter intervals
            sigma = 1 if db == da else -1
            assert db == da or db == (-da[0], -da[1])
            t0 = _param_on(pa, da, pb)
            if sigma == 1:
                b_lo, b_hi = t0, (None if tb is None else t0 + tb)
            else:
                b_lo, b_hi = (None if tb is None else t0 - tb), t0
            lo = Fraction(0) if b_lo is None else max(Fraction(0), b_lo)
            if ta is None and b_hi is None:
                raise UnsupportedConfiguration("curves share an unbounded ray")
            hi = b_hi if ta is None else (ta if b_hi is None else min(ta, b_hi))
            if lo > hi:
                continue
            p1 = (pa[0] + da[0] * lo, pa[1] + da[1] * lo)
            if lo == hi:
                points.setdefault(p1, set()).add(("a", ea.index))
                points[p1].add(("b", eb.index))
                continue
            p2 = (pa[0] + da[0] * hi, pa[1] + da[1] * hi)
            if lex_key(p2) < lex_key(p1):
                p1, p2 = p2, p1
            segments.append((p1, p2, ea.index, eb.index))

    for i in range(len(segments)):
        for j in range(i + 1, len(segments)):
            if _segments_touch(segments[i], segments[j]):
                raise UnsupportedConfiguration("overlap components chain through a shared vertex")

    components = []
    for p1, p2, ea, eb in segments:
        components.append(_classify_segment(curve_a, curve_b, p1, p2, ea, eb))
    for pt, gens in points.items():
        if any(_on_segment_piece(seg, pt) for seg in segments):
            continue
        components.append(_classify_point(curve_a, curve_b, pt, gens))
    components.sort(key=lambda comp: comp.sort_key())
    return components


def _on_segment_piece(seg, pt: Point) -> bool:
    p1, p2, _, _ = seg
    u = sub(p2, p1)
    w = sub(pt, p1)
    if det2(u, w) != 0:
        return False
    t = (u[0] * w[0] + u[1] * w[1])
    return 0 <= t <= (u[0] * u[0] + u[1] * u[1])


def _segments_touch(s1, s2) -> bool:
    for pt in (s1[0], s1[1]):
        if _on_segment_piece(s2, pt):
            return True
    for pt in (s2[0], s2[1]):
        if _on_segment_piece(s1, pt):
            return True
    return False


def _vertex_multiplicity(curve: TropicalCurve, vid: int, line_dir) -> int:
    total = 0
    for eid in curve.vertex_edges[vid]:
        total += abs(det2(_outward_direction(curve, eid, vid), line_dir))
    assert total % 2 == 0, "balanced vertex gives an even determinant sum"
    return total // 2


def _classify_point(curve_a, curve_b, pt: Point, gens) -> IntersectionComponent:
    va = curve_a.vertex_at(pt)
    vb = curve_b.vertex_at(pt)
    a_edges = sorted(eid for tag, eid in gens if tag == "a")
    b_edges = sorted(eid for tag, eid in gens if tag == "b")
    if va is not None and vb is not None:
        raise UnsupportedConfiguration(f"{pt} is a vertex of both curves")
    if va is None and vb is None:
        assert len(a_edges) == 1 and len(b_edges) == 1
        mult = transverse_multiplicity(
            curve_a.edges[a_edges[0]].direction, curve_b.edges[b_edges[0]].direction
        )
        return IntersectionComponent(
            TRANSVERSE, mult, curve_a, curve_b, point=pt, edge_a=a_edges[0], edge_b=b_edges[0]
        )
    if va is not None:
        assert len(b_edges) == 1
        host = b_edges[0]
        if not curve_b.edge_contains(host, pt, strict=True):
            raise UnsupportedConfiguration(f"vertex at {pt} meets an endpoint of the other edge")
        mult = _vertex_multiplicity(curve_a, va, curve_b.edges[host].direction)
        return IntersectionComponent(
            ISOLATED_VERTEX, mult, curve_a, curve_b,
            point=pt, edge_b=host, vertex_owner="a", vertex_id=va,
        )
    assert len(a_edges) == 1
    host = a_edges[0]
    if not curve_a.edge_contains(host, pt, strict=True):
        raise UnsupportedConfiguration(f"vertex at {pt} meets an endpoint of the other edge")
    mult = _vertex_multiplicity(curve_b, vb, curve_a.edges[host].direction)
    return IntersectionComponent(
        ISOLATED_VERTEX, mult, curve_a, curve_b,
        point=pt, edge_a=host, vertex_owner="b", vertex_id=vb,
    )


def _classify_segment(curve_a, curve_b, p1: Point, p2: Point, ea: int, eb: int) -> IntersectionComponent:
    va1, vb1 = curve_a.vertex_at(p1), curve_b.vertex_at(p1)
    va2, vb2 = curve_a.vertex_at(p2), curve_b.vertex_at(p2)
    if (va1 is not None and vb1 is not None) or (va2 is not None and vb2 is not None):
        raise UnsupportedConfiguration("overlap endpoint is a vertex of both curves")
    seg = (p1, p2)
    # whole bounded edge of one curve inside the interior of the other's edge
    e_a = curve_a.edges[ea]
    if e_a.bounded and va1 is not None and va2 is not None:
        if {p1, p2} == {curve_a.vertices[e_a.tail], curve_a.vertices[e_a.head]}:
            if curve_b.edge_contains(eb, p1, strict=True) and curve_b.edge_contains(eb, p2, strict=True):
                return IntersectionComponent(
                    EDGE_IN_EDGE, 2, curve_a, curve_b, segment=seg,
                    edge_a=ea, edge_b=eb, inner="a",
                )
        raise UnsupportedConfiguration("overlap spans vertices of one curve but is not its edge")
    e_b = curve_b.edges[eb]
    if e_b.bounded and vb1 is not None and vb2 is not None:
        if {p1, p2} == {curve_b.vertices[e_b.tail], curve_b.vertices[e_b.head]}:
            if curve_a.edge_contains(ea, p1, strict=True) and curve_a.edge_contains(ea, p2, strict=True):
                return IntersectionComponent(
                    EDGE_IN_EDGE, 2, curve_a, curve_b, segment=seg,
                    edge_a=ea, edge_b=eb, inner="b",
                )
        raise UnsupportedConfiguration("overlap spans vertices of one curve but is not its edge")
    # proper overlap: one endpoint is a vertex of each curve
    ends = []
    for pt, va, vb in ((p1, va1, vb1), (p2, va2, vb2)):
        if va is not None:
            if not curve_b.edge_contains(eb, pt, strict=True):
                raise UnsupportedConfiguration("overlap endpoint is not interior to the host edge")
            ends.append(("a", va))
        elif vb is not None:
            if not curve_a.edge_contains(ea, pt, strict=True):
                raise UnsupportedConfiguration("overlap endpoint is not interior to the host edge")
            ends.append(("b", vb))
        else:
            raise UnsupportedConfiguration("overlap endpoint is not a vertex of either curve")
    if ends[0][0] == ends[1][0]:
        raise UnsupportedConfiguration("overlap endpoints belong to the same curve")
    return IntersectionComponent(
        SEGMENT_OVERLAP, 2, curve_a, curve_b, segment=seg,
        edge_a=ea, edge_b=eb, end_vertices=(ends[0], ends[1]),
    )


# -- real lifts ----------------------------------------------------------


def _edge_twisted(curve: TropicalCurve, phase: RealPhaseStructure, eid: int) -> bool:
    e = curve.edges[eid]
    assert e.bounded
    verdicts = []
    for eps in phase.lines[eid].elements:
        sides = []
        for v in (e.tail, e.head):
            cont = _continuation_edge(curve, phase, eid, v, eps)
            sides.append(det2(e.direction, _outward_direction(curve, cont, v)) > 0)
        verdicts.append(sides[0] != sides[1])
    assert verdicts[0] == verdicts[1]
    return verdicts[0]


def relative_twist_geometric(
    comp: IntersectionComponent, phase_a: RealPhaseStructure, phase_b: RealPhaseStructure
) -> bool:
    """Sidedness test: a shared phase element whose continuations at the
    two overlap endpoints leave on distinct sides of the supporting line."""
    line = phase_a.lines[comp.edge_a]
    ref_dir = comp.curve_a.edges[comp.edge_a].direction
    verdicts = []
    for eps in line.elements:
        sides = []
        for tag, vid in comp.end_vertices:
            curve = comp.curve_a if tag == "a" else comp.curve_b
            phase = phase_a if tag == "a" else phase_b
            host = comp.edge_a if tag == "a" else comp.edge_b
            cont = _continuation_edge(curve, phase, host, vid, eps)
            s = det2(ref_dir, _outward_direction(curve, cont, vid))
            assert s != 0
            sides.append(s > 0)
        verdicts.append(sides[0] != sides[1])
    assert verdicts[0] == verdicts[1], "relative twist must not depend on the phase element"
    return verdicts[0]


def relative_twist_signs(
    comp: IntersectionComponent, phase_a: RealPhaseStructure, phase_b: RealPhaseStructure
) -> bool:
    """Relative twist from sign distributions after aligning the two dual
    edges by a translation."""
    delta_a = signs_from_phase(comp.curve_a, phase_a)
    delta_b = signs_from_phase(comp.curve_b, phase_b)
    ea = comp.curve_a.edges[comp.edge_a]
    eb = comp.curve_b.edges[comp.edge_b]
    pa, qa = ea.dual
    pb, qb = eb.dual
    if eb.direction != ea.direction:
        assert eb.direction == (-ea.direction[0], -ea.direction[1])
        pb, qb = qb, pb
    shift = (pa[0] - pb[0], pa[1] - pb[1])
    assert (qa[0] - qb[0], qa[1] - qb[1]) == shift
    # third vertex of the dual cell of each overlap-end vertex
    v3 = {}
    for tag, vid in comp.end_vertices:
        curve = comp.curve_a if tag == "a" else comp.curve_b
        cell = curve.vertex_cell[vid]
        dual_pair = (pa, qa) if tag == "a" else (comp.curve_b.edges[comp.edge_b].dual)
        (third,) = [v for v in cell if v not in dual_pair]
        v3[tag] = third
    sa, sb = delta_a.signs, delta_b.signs
    assert sa[pa] * sa[qa] * sb[pb] * sb[qb] == 1, "equal phases force the premise product"
    v3a = v3["a"]
    v3b = v3["b"]
    v3b_shifted = (v3b[0] + shift[0], v3b[1] + shift[1])
    if (v3a[0] - v3b_shifted[0]) % 2 == 0 and (v3a[1] - v3b_shifted[1]) % 2 == 0:
        r1 = sa[v3a] * sa[pa] * sb[v3b] * sb[pb] == -1
        r2 = sa[v3a] * sa[qa] * sb[v3b] * sb[qb] == -1
        assert r1 == r2
        return r1
    r1 = sa[pa] * sa[v3a] * sb[qb] * sb[v3b] == 1
    r2 = sa[qa] * sa[v3a] * sb[pb] * sb[v3b] == 1
    assert r1 == r2
    return r1


def is_relatively_twisted(
    comp: IntersectionComponent, phase_a: RealPhaseStructure, phase_b: RealPhaseStructure
) -> bool:
    if comp.kind != SEGMENT_OVERLAP:
        raise WrongKind("relative twist is defined for segment overlaps")
    if phase_a.lines[comp.edge_a] != phase_b.lines[comp.edge_b]:
        raise PhasesDiffer("relative twist needs equal phase lines on the overlap")
    geo = relative_twist_geometric(comp, phase_a, phase_b)
    sgn = relative_twist_signs(comp, phase_a, phase_b)
    assert geo == sgn, "geometric and sign-based relative twist disagree"
    return geo


def tangency_possible(
    comp: IntersectionComponent, phase_a: RealPhaseStructure, phase_b: RealPhaseStructure
) -> bool:
    """Necessary condition for a double real lift on the component."""
    if comp.kind == EDGE_IN_EDGE:
        if phase_a.lines[comp.edge_a] != phase_b.lines[comp.edge_b]:
            return False
        if comp.inner == "a":
            return not _edge_twisted(comp.curve_a, phase_a, comp.edge_a)
        return not _edge_twisted(comp.curve_b, phase_b, comp.edge_b)
    if comp.kind == SEGMENT_OVERLAP:
        if phase_a.lines[comp.edge_a] != phase_b.lines[comp.edge_b]:
            return False
        return is_relatively_twisted(comp, phase_a, phase_b)
    raise WrongKind("tangency is only meaningful for overlap components")


def _forced(mult: int, reals: int, pairs: int, locations=None) -> LiftOutcome:
    assert reals + 2 * pairs == mult, "lift counts must add up to the multiplicity"
    if reals and pairs:
        return LiftOutcome("forced-mixed", reals, pairs, locations)
    if reals:
        return LiftOutcome("forced-real", reals, 0, locations)
    return LiftOutcome("forced-pairs", 0, pairs, locations)


_INDET_NOTE = (
    "two-real and conjugate-pair are realised by infinitely many curves; "
    "tangent-double-real by exactly two pairs of realisations"
)


def real_lift(
    comp: IntersectionComponent, phase_a: RealPhaseStructure, phase_b: RealPhaseStructure
) -> LiftOutcome:
    """Forced or indeterminate real structure of the lifted intersection."""
    if comp.kind == TRANSVERSE:
        m = comp.multiplicity
        if m % 2 == 1:
            return _forced(m, 1, (m - 1) // 2)
        # even multiplicity forces equal direction classes, so the lines compare
        assert phase_a.lines[comp.edge_a].direction == phase_b.lines[comp.edge_b].direction
        if phase_a.lines[comp.edge_a] == phase_b.lines[comp.edge_b]:
            return _forced(m, 2, (m - 2) // 2)
        return _forced(m, 0, m // 2)
    if comp.kind == EDGE_IN_EDGE:
        inner_curve = comp.curve_a if comp.inner == "a" else comp.curve_b
        inner_phase = phase_a if comp.inner == "a" else phase_b
        inner_edge = comp.edge_a if comp.inner == "a" else comp.edge_b
        if phase_a.lines[comp.edge_a] != phase_b.lines[comp.edge_b]:
            return _forced(2, 2, 0, locations=comp.segment)
        if _edge_twisted(inner_curve, inner_phase, inner_edge):
            return _forced(2, 2, 0)
        return LiftOutcome(
            "indeterminate", possible=(TWO_REAL, CONJ_PAIR, TANGENT_DOUBLE), note=_INDET_NOTE
        )
    if comp.kind == SEGMENT_OVERLAP:
        if phase_a.lines[comp.edge_a] != phase_b.lines[comp.edge_b]:
            return _forced(2, 2, 0, locations=comp.segment)
        if is_relatively_twisted(comp, phase_a, phase_b):
            return LiftOutcome(
                "indeterminate", possible=(TWO_REAL, CONJ_PAIR, TANGENT_DOUBLE), note=_INDET_NOTE
            )
        return _forced(2, 2, 0)
    assert comp.kind == ISOLATED_VERTEX
    return LiftOutcome(
        "indeterminate", non_real_possible=True,
        note="a nearby line can meet the lifted curve in non-real points",
    )


def bezout_total(curve_a: TropicalCurve, curve_b: TropicalCurve) -> int:
    """Sum of multiplicities; equals deg*deg when all components are compact."""
    curve_a.require_degree()
    curve_b.require_degree()
    return sum(comp.multiplicity for comp in intersection_components(curve_a, curve_b))
