"""Hyperbolicity of real tropical curves and the two hyperbolicity loci.

A real tropical curve is hyperbolic iff its twist set is dividing with
twist-matrix kernel of dimension ceil(d/2)-1.  The locus of components
the curve is hyperbolic with respect to is computed two independent
ways: geometrically (interior of the innermost oval of the real part)
and pointwise (the three pencil conditions at a generic point of each
component, for each symmetry), plus a third bridge criterion special to
honeycombs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve import ComplementComponent, TropicalCurve
from .errors import (
    NotAdmissible,
    NotDividing,
    NotGenericAfterRetries,
    NotHoneycomb,
    PointOnCurve,
)
from .geometry import IVec, Point, canonical_direction, det2, intersect_param_lines, sub
from .gf2 import AffineFlat, Gf2Vector, kernel, solve_affine
from .realstruct import (
    EPS4,
    Eps,
    RealPhaseStructure,
    TwistSet,
    _continuation_edge,
    _outward_direction,
    count_components_direct,
    div_space,
    is_admissible,
    is_dividing,
    real_part,
    region_class,
    signs_from_phase,
    twist_matrix,
    twists_from_phase,
)

# rays of the pencil subdivision at a point: label -> outward direction
RAY_DIR = {(1, 0): (1, 0), (0, 1): (0, 1), (1, 1): (-1, -1)}
# sectors flanking each ray: (side with det(ray, w) > 0, side with < 0)
_FLANK = {(1, 0): ((1, 1), (0, 1)), (0, 1): ((1, 0), (1, 1)), (1, 1): ((0, 1), (1, 0))}
_LINE_RAY_DIRS = ((-1, 0), (0, -1), (1, 1))
_CLASS_NORMAL = {(1, 0): (0, 1), (0, 1): (1, 0), (1, 1): (1, 1)}


@dataclass(frozen=True)
class SigmaV:
    """Subdivision of the plane by the three pencil rays at the apex."""

    apex: Point

    def classify(self, p: Point):
        w = sub(p, self.apex)
        if w == (0, 0):
            return ("apex",)
        if w[1] == 0 and w[0] > 0:
            return ("ray", (1, 0))
        if w[0] == 0 and w[1] > 0:
            return ("ray", (0, 1))
        if w[0] == w[1] and w[0] < 0:
            return ("ray", (1, 1))
        if w[0] > 0 and w[1] > 0:
            return ("sector", (1, 1))
        if w[0] < 0 and w[1] > w[0]:
            return ("sector", (1, 0))
        assert w[1] < 0 and w[0] > w[1]
        return ("sector", (0, 1))

    def ray_direction(self, label: IVec) -> IVec:
        return RAY_DIR[label]


def sigma_v(v: Point) -> SigmaV:
    return SigmaV((Fraction(v[0]), Fraction(v[1])))


def is_generic(v: Point, curve: TropicalCurve) -> bool:
    """True when the three pencil rays meet the curve transversely in
    edge interiors (no vertex hits, no overlaps)."""
    v = (Fraction(v[0]), Fraction(v[1]))
    if curve.on_curve(v):
        raise PointOnCurve(f"{v} lies on the curve")
    sig = SigmaV(v)
    for u in curve.vertices:
        if sig.classify(u)[0] != "sector":
            return False
    for label, ray in RAY_DIR.items():
        for e in curve.edges:
            p = curve.edge_anchor(e.index)
            res = intersect_param_lines(v, ray, p, e.direction)
            if res is not None and res[0] == "collinear":
                t0 = _ray_param(v, ray, p)
                tmax = curve.edge_tmax(e.index)
                if e.direction == ray:
                    hi = None if tmax is None else t0 + tmax
                else:
                    hi = t0
                if hi is None or hi >= 0:
                    return False
    return True


def _ray_param(v: Point, ray: IVec, p: Point) -> Fraction:
    w = sub(p, v)
    return w[0] / ray[0] if ray[0] != 0 else w[1] / ray[1]


def _generic_point(curve: TropicalCurve, alpha: IVec, start: int = 0, budget: int = 60) -> Point:
    base = curve.region_point(alpha)
    for k in range(start, start + budget):
        if k == 0:
            cand = base
        else:
            off = (Fraction(1, 101 + 17 * k), Fraction(1, 113 + 19 * k))
            cand = (base[0] + off[0], base[1] + off[1])
        if curve.dominating(cand) != alpha:
            continue
        if is_generic(cand, curve):
            return cand
    raise NotGenericAfterRetries(f"no generic point found in the component of {alpha}")


@dataclass(frozen=True)
class PointVerdict:
    component: IVec
    eps: Eps
    hyperbolic: bool
    failing_condition: int | None = None
    detail: str = ""


@dataclass(frozen=True)
class MultiBridge:
    edges: frozenset[int]
    dual_line: tuple[str, int]  # ("v"|"h"|"d", level)
    direction: IVec


@dataclass(frozen=True)
class HypAlphaFlat:
    alpha: IVec
    flat: AffineFlat
    constraining_bridges: tuple[MultiBridge, ...]


@dataclass(frozen=True)
class HyperbolicityReport:
    hyperbolic: bool
    kernel_dim: int
    component_count: int
    stable: bool
    locus: frozenset[IVec]
    signed_locus: frozenset[tuple[IVec, Eps]]
    locus_geometric: frozenset[IVec]
    locus_pointwise: frozenset[IVec]
    signed_locus_geometric: frozenset[tuple[IVec, Eps]]
    signed_locus_pointwise: frozenset[tuple[IVec, Eps]]
    per_point: dict[tuple[IVec, Eps], PointVerdict]


def is_hyperbolic(curve: TropicalCurve, twists: TwistSet) -> tuple[bool, int]:
    """Dividing twist set with kernel dimension ceil(d/2) - 1."""
    d = curve.require_degree()
    if not is_admissible(curve, twists):
        raise NotAdmissible("hyperbolicity needs an admissible twist set")
    k = kernel(twist_matrix(curve, twists)).dim
    return (is_dividing(curve, twists) and k == (d + 1) // 2 - 1, k)


# -- pointwise criterion -------------------------------------------------


class _ComponentAnalysis:
    """Geometry of the pencil conditions at a generic point of one
    component; everything that does not depend on the symmetry."""

    def __init__(self, curve: TropicalCurve, phase: RealPhaseStructure,
                 twisted: frozenset[int], alpha: IVec, start: int = 0):
        self.curve = curve
        self.phase = phase
        self.alpha = alpha
        v = _generic_point(curve, alpha, start=start)
        self.v = v
        sig = SigmaV(v)
        self.sector: list[IVec] = []
        self.cond1_failure: str | None = None
        for vid, u in enumerate(curve.vertices):
            cls = sig.classify(u)
            assert cls[0] == "sector"
            label = cls[1]
            self.sector.append(label)
            if self.cond1_failure is None:
                for eid in curve.vertex_edges[vid]:
                    if abs(det2(curve.edges[eid].direction, label)) > 1:
                        self.cond1_failure = (
                            f"vertex {vid} in sector {label} has no edge of direction {label}"
                        )
                        break

        # ray crossings: eid -> list of (ray label, point, |det|)
        crossings: dict[int, list] = {}
        for label, ray in RAY_DIR.items():
            for e in curve.edges:
                p = curve.edge_anchor(e.index)
                res = intersect_param_lines(v, ray, p, e.direction)
                if res is None:
                    continue
                if res[0] == "collinear":
                    # genericity rules out overlaps; a disjoint collinear
                    # edge is the contained case of the sector conditions
                    continue
                t, s = res[1], res[2]
                tmax = curve.edge_tmax(e.index)
                if t <= 0 or s <= 0 or (tmax is not None and s >= tmax):
                    continue
                pt = (v[0] + ray[0] * t, v[1] + ray[1] * t)
                crossings.setdefault(e.index, []).append(
                    (label, pt, abs(det2(e.direction, ray)))
                )

        self.cond2_edges: list[int] = sorted(
            eid for eid, hits in crossings.items() if any(h[2] == 2 for h in hits)
        )

        # condition 3 bookkeeping
        self.cond3_contained: list[int] = []   # must be twisted
        self.cond3_overlaps: list[dict] = []   # relative-twist checks
        for eid in curve.bounded_edges:
            e = curve.edges[eid]
            cls = canonical_direction(e.direction)
            if cls not in ((1, 0), (0, 1), (1, 1)):
                continue
            in_tail = self.sector[e.tail] == cls
            in_head = self.sector[e.head] == cls
            if in_tail and in_head:
                self.cond3_contained.append(eid)
                continue
            if not (in_tail or in_head):
                continue
            cands = []
            for label, pt, _ in crossings.get(eid, []):
                ray = RAY_DIR[label]
                for d in (e.direction, (-e.direction[0], -e.direction[1])):
                    sgn = det2(ray, d)
                    entered = _FLANK[label][0] if sgn > 0 else _FLANK[label][1]
                    if entered == cls:
                        assert d in _LINE_RAY_DIRS, "entry direction must be a line ray"
                        cands.append((pt, label, d))
            assert len(cands) == 1, "edge meets its sector across exactly one ray"
            u0, label, d = cands[0]
            w_vid = e.head if d == e.direction else e.tail
            assert self.sector[w_vid] == cls
            self.cond3_overlaps.append(self._overlap_record(eid, u0, label, d, w_vid))

    def _overlap_record(self, eid, u0, ray_label, d, w_vid):
        curve, phase = self.curve, self.phase
        e = curve.edges[eid]
        line = phase.lines[eid]
        # far-end continuations on the curve side, per phase element
        side_w = {}
        for eps in line.elements:
            cont = _continuation_edge(curve, phase, eid, w_vid, eps)
            s = det2(e.direction, _outward_direction(curve, cont, w_vid))
            assert s != 0
            side_w[eps] = s > 0
        # the two other rays of the pencil line with vertex u0
        rv_dir = (-RAY_DIR[ray_label][0], -RAY_DIR[ray_label][1])
        third_dir = next(
            x for x in _LINE_RAY_DIRS if x not in (d, rv_dir)
        )
        return {
            "eid": eid,
            "level": line.level,
            "elements": line.elements,
            "side_w": side_w,
            "rv": (rv_dir, canonical_direction(rv_dir)),
            "third": (third_dir, canonical_direction(third_dir)),
            "ref_dir": e.direction,
        }

    def verdict(self, eps: Eps, twisted: frozenset[int]) -> PointVerdict:
        if self.cond1_failure is not None:
            return PointVerdict(self.alpha, eps, False, 1, self.cond1_failure)
        for eid in self.cond2_edges:
            if not self.phase.lines[eid].contains(eps):
                return PointVerdict(
                    self.alpha, eps, False, 2,
                    f"edge {eid} crosses a ray with determinant 2 but {eps} is not on its phase line",
                )
        for eid in self.cond3_contained:
            if eid not in twisted:
                return PointVerdict(
                    self.alpha, eps, False, 3,
                    f"edge {eid} lies inside its sector but is not twisted",
                )
        for rec in self.cond3_overlaps:
            if self._relatively_twisted(rec, eps):
                return PointVerdict(
                    self.alpha, eps, False, 3,
                    f"edge {rec['eid']} is relatively twisted against the pencil line",
                )
        return PointVerdict(self.alpha, eps, True)

    def _relatively_twisted(self, rec, eps: Eps) -> bool:
        rv_dir, rv_cls = rec["rv"]
        third_dir, third_cls = rec["third"]
        n_rv = _CLASS_NORMAL[rv_cls]
        n_third = _CLASS_NORMAL[third_cls]
        c_rv = (eps[0] * n_rv[0] + eps[1] * n_rv[1]) & 1
        c_third = 1 ^ rec["level"] ^ c_rv
        verdicts = []
        for phi in rec["elements"]:
            if ((phi[0] * n_rv[0] + phi[1] * n_rv[1]) & 1) == c_rv:
                cont_dir = rv_dir
                assert ((phi[0] * n_third[0] + phi[1] * n_third[1]) & 1) != c_third
            else:
                cont_dir = third_dir
                assert ((phi[0] * n_third[0] + phi[1] * n_third[1]) & 1) == c_third
            side_u0 = det2(rec["ref_dir"], cont_dir) > 0
            verdicts.append(side_u0 != rec["side_w"][phi])
        assert verdicts[0] == verdicts[1]
        return verdicts[0]


def hyperbolic_wrt_point(
    curve: TropicalCurve,
    phase: RealPhaseStructure,
    component: ComplementComponent | IVec,
    eps: Eps,
    sample_offset: int = 0,
) -> PointVerdict:
    """Is every curve near this data hyperbolic with respect to a real
    point in the eps-copy of the component?  Checks the three pencil
    conditions at a deterministically sampled generic point."""
    alpha = component.dual_point if isinstance(component, ComplementComponent) else component
    twisted = frozenset(twists_from_phase(curve, phase).edges)
    ana = _ComponentAnalysis(curve, phase, twisted, alpha, start=sample_offset)
    return ana.verdict((eps[0] & 1, eps[1] & 1), twisted)


# -- loci -----------------------------------------------------------------


def hyperbolicity_locus(curve: TropicalCurve, phase: RealPhaseStructure) -> HyperbolicityReport:
    """Full report: twist-matrix data plus the locus by both methods."""
    d = curve.require_degree()
    twists = twists_from_phase(curve, phase)
    k = kernel(twist_matrix(curve, twists)).dim
    hyp = is_dividing(curve, twists) and k == (d + 1) // 2 - 1

    rp = real_part(curve, phase)
    report = count_components_direct(rp)

    # method A: interior of the innermost oval
    atoms_a: set[tuple[IVec, Eps]] = set()
    if hyp:
        if d == 1:
            atoms_a = {(a, e) for a in curve.dual.lattice_points for e in EPS4}
        else:
            ovals = [c for c in report.components if c.kind == "oval"]
            assert len(ovals) == d // 2, "hyperbolic curve must have floor(d/2) ovals"
            depths = sorted(c.nesting_depth for c in ovals)
            assert depths == list(range(1, len(ovals) + 1)), "oval nesting must be a chain"
            innermost = max(ovals, key=lambda c: c.nesting_depth)
            for other in report.components:
                if other is innermost:
                    continue
                eid, eps0 = min(other.edge_copies)
                witness = (curve.edges[eid].dual[0], eps0)
                assert witness not in innermost.interior_regions, (
                    "innermost oval interior must not contain other components"
                )
            atoms_a = set(innermost.interior_regions)
    rh_a = frozenset(region_class(curve, a, e) for a, e in atoms_a)
    h_a = frozenset(a for a, _ in rh_a)

    # method B: pointwise pencil conditions
    twisted = frozenset(twists.edges)
    per_point: dict[tuple[IVec, Eps], PointVerdict] = {}
    rh_b_set = set()
    for alpha in curve.dual.lattice_points:
        classes = sorted({region_class(curve, alpha, e)[1] for e in EPS4})
        ana = _ComponentAnalysis(curve, phase, twisted, alpha)
        for eps in classes:
            verdict = ana.verdict(eps, twisted)
            per_point[(alpha, eps)] = verdict
            if verdict.hyperbolic:
                rh_b_set.add((alpha, eps))
    rh_b = frozenset(rh_b_set)
    h_b = frozenset(a for a, _ in rh_b)

    assert rh_a == rh_b, f"geometric and pointwise signed loci disagree: {rh_a} vs {rh_b}"
    assert h_a == h_b

    stable = is_stable_limit(curve, phase)
    return HyperbolicityReport(
        hyperbolic=hyp,
        kernel_dim=k,
        component_count=report.count,
        stable=stable,
        locus=h_a,
        signed_locus=rh_a,
        locus_geometric=h_a,
        locus_pointwise=h_b,
        signed_locus_geometric=rh_a,
        signed_locus_pointwise=rh_b,
        per_point=per_point,
    )


def is_stable_limit(curve: TropicalCurve, phase: RealPhaseStructure) -> bool:
    """Honeycomb, every bounded edge twisted, and the reconstructed sign
    distribution constant (the identity symmetry is globally consistent)."""
    curve.require_degree()
    if not curve.is_honeycomb():
        return False
    twists = twists_from_phase(curve, phase)
    if twists.edges != frozenset(curve.bounded_edges):
        return False
    delta = signs_from_phase(curve, phase)
    return len(set(delta.signs.values())) == 1


# -- honeycomb specifics ---------------------------------------------------


_DUAL_FAMILY = {(0, 1): "v", (1, 0): "h", (1, -1): "d"}


def multi_bridges(curve: TropicalCurve) -> list[MultiBridge]:
    """The 3(d-1) parallel families that disconnect a honeycomb."""
    d = curve.require_degree()
    if not curve.is_honeycomb():
        raise NotHoneycomb("multi-bridges are defined on honeycombs")
    groups: dict[tuple[str, int], set[int]] = {}
    for eid in curve.bounded_edges:
        p, q = curve.edges[eid].dual
        fam = _DUAL_FAMILY[canonical_direction(sub_pts(q, p))]
        if fam == "v":
            level = p[0]
        elif fam == "h":
            level = p[1]
        else:
            level = p[0] + p[1]
        groups.setdefault((fam, level), set()).add(eid)
    bridges = []
    for (fam, level) in sorted(groups):
        eids = frozenset(groups[(fam, level)])
        direction = canonical_direction(curve.edges[min(eids)].direction)
        assert all(
            canonical_direction(curve.edges[e].direction) == direction for e in eids
        )
        assert _removal_components(curve, eids) == 2, "bridge removal must leave two parts"
        bridges.append(MultiBridge(eids, (fam, level), direction))
    assert len(bridges) == 3 * (d - 1)
    return bridges


def sub_pts(q: IVec, p: IVec) -> IVec:
    return (q[0] - p[0], q[1] - p[1])


def _removal_components(curve: TropicalCurve, removed: frozenset[int]) -> int:
    parent = list(range(len(curve.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in curve.bounded_edges:
        if eid in removed:
            continue
        e = curve.edges[eid]
        ra, rb = find(e.tail), find(e.head)
        if ra != rb:
            parent[ra] = rb
    return len({find(v) for v in range(len(curve.vertices))})


def honeycomb_locus(curve: TropicalCurve, twists: TwistSet) -> frozenset[IVec]:
    """Components whose constraining bridges (left, below, diagonally
    above) are all twisted."""
    d = curve.require_degree()
    if not curve.is_honeycomb():
        raise NotHoneycomb("the bridge criterion needs a honeycomb")
    if not is_dividing(curve, twists):
        raise NotDividing("the bridge criterion needs a dividing twist set")
    bridges = {b.dual_line: b for b in multi_bridges(curve)}
    out = set()
    for alpha in curve.dual.lattice_points:
        if all(
            bridges[key].edges <= twists.edges
            for key in _constraining_keys(alpha, d)
        ):
            out.add(alpha)
    return frozenset(out)


def _constraining_keys(alpha: IVec, d: int) -> list[tuple[str, int]]:
    a1, a2 = alpha
    keys = [("v", k) for k in range(1, a1)]
    keys += [("h", k) for k in range(1, a2)]
    keys += [("d", s) for s in range(a1 + a2 + 1, d)]
    return keys


def hyp_alpha_flat(curve: TropicalCurve, alpha: IVec) -> HypAlphaFlat:
    """Affine flat of dividing twist sets whose locus contains alpha."""
    d = curve.require_degree()
    if not curve.is_honeycomb():
        raise NotHoneycomb("the bridge flat needs a honeycomb")
    if alpha not in curve.dual.lattice_points:
        raise ValueError(f"{alpha} is not a lattice point of the Newton polygon")
    all_bridges = {b.dual_line: b for b in multi_bridges(curve)}
    constraining = tuple(all_bridges[k] for k in _constraining_keys(alpha, d))
    div = div_space(curve)
    n = len(curve.bounded_edges)
    constraints = [(c, 0) for c in div.orthogonal_constraints()]
    for b in constraining:
        for eid in sorted(b.edges):
            constraints.append((Gf2Vector.from_indices(n, [curve.bounded_index[eid]]), 1))
    flat = solve_affine(constraints, n)
    assert flat is not None
    assert div.dim - flat.dim == len(constraining), "codimension equals the bridge count"
    origin_bits = 0
    for b in constraining:
        for eid in b.edges:
            origin_bits |= 1 << curve.bounded_index[eid]
    assert flat.contains(Gf2Vector(n, origin_bits))
    return HypAlphaFlat(alpha, flat, constraining)
