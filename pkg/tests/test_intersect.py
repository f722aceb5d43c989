from fractions import Fraction

import pytest

from tropcurve import (
    SignDistribution,
    TropicalPolynomial,
    bezout_total,
    curve_from_polynomial,
    honeycomb,
    intersection_components,
    is_relatively_twisted,
    phase_from_signs,
    real_lift,
    tangency_possible,
    transverse_multiplicity,
)
from tropcurve.errors import (
    ParallelDirections,
    PhasesDiffer,
    UnsupportedConfiguration,
    WrongKind,
)
from tropcurve.intersect import (
    CONJ_PAIR,
    TANGENT_DOUBLE,
    TWO_REAL,
    relative_twist_geometric,
    relative_twist_signs,
)
from tropcurve.selfcheck import random_nonsingular_curve, random_sign_distribution

from conftest import make_line


def all_plus(curve):
    return phase_from_signs(curve, SignDistribution.constant(curve))


def line_phase(curve, flip=False):
    """A line phase; flipping the x-coefficient sign swaps the diagonal line."""
    signs = {(0, 0): 1, (1, 0): -1 if flip else 1, (0, 1): 1}
    return phase_from_signs(curve, SignDistribution(signs))


def hook_curve(m):
    """Curve with an unbounded edge of primitive direction (-(m-1), 1),
    meeting a diagonal line edge with multiplicity m (m >= 2)."""
    coeffs = {(0, 0): Fraction(0)}
    for j in range(m):
        coeffs[(1, j)] = Fraction(-((2 * j - (m - 1)) ** 2), 1)
    return curve_from_polynomial(TropicalPolynomial(coeffs))


def test_transverse_multiplicity_values():
    assert transverse_multiplicity((1, 1), (1, -1)) == 2
    assert transverse_multiplicity((1, 0), (0, 1)) == 1
    for m in range(1, 6):
        assert transverse_multiplicity((1, 1), (1, -m + 1)) == m
    with pytest.raises(ParallelDirections):
        transverse_multiplicity((1, 1), (-1, -1))


def test_two_generic_lines_meet_once():
    a = make_line()
    b = make_line(0, -5, -3)
    comps = intersection_components(a, b)
    assert [c.kind for c in comps] == ["transverse"]
    assert comps[0].multiplicity == 1
    out = real_lift(comps[0], all_plus(a), all_plus(b))
    assert (out.variant, out.reals, out.pairs) == ("forced-real", 1, 0)
    assert bezout_total(a, b) == 1


def test_transverse_multiplicity_two_both_phases():
    q = curve_from_polynomial(
        TropicalPolynomial({(0, 0): 0, (1, 0): -2, (0, 1): -2, (1, 1): 0})
    )
    line = make_line(0, 1, 1)  # vertex (-1,-1); diagonal ray through (0,0)
    comps = intersection_components(line, q)
    assert [c.kind for c in comps] == ["transverse"]
    assert comps[0].multiplicity == 2
    equal = real_lift(comps[0], line_phase(line), all_plus(q))
    assert (equal.variant, equal.reals, equal.pairs) == ("forced-real", 2, 0)
    distinct = real_lift(comps[0], line_phase(line, flip=True), all_plus(q))
    assert (distinct.variant, distinct.reals, distinct.pairs) == ("forced-pairs", 0, 1)


@pytest.mark.parametrize("m", [3, 4])
def test_transverse_higher_multiplicities(m):
    curve = hook_curve(m)
    ray = next(
        e for e in curve.edges if not e.bounded and e.direction == (-(m - 1), 1)
    )
    anchor = curve.edge_anchor(ray.index)
    # place the line vertex so its diagonal ray crosses the hook ray
    probe = (anchor[0] - 2 * (m - 1), anchor[1] + 2)
    vertex = (probe[0] - 3, probe[1] - 3)
    line = make_line(0, -vertex[0], -vertex[1])
    comps = intersection_components(line, curve)
    hits = [c for c in comps if c.kind == "transverse" and c.multiplicity == m]
    assert len(hits) == 1
    comp = hits[0]
    if m % 2 == 1:
        out = real_lift(comp, line_phase(line), all_plus(curve))
        assert (out.variant, out.reals, out.pairs) == ("forced-mixed", 1, (m - 1) // 2)
    else:
        equal = real_lift(comp, line_phase(line), all_plus(curve))
        assert (equal.reals, equal.pairs) == (2, (m - 2) // 2)
        distinct = real_lift(comp, line_phase(line, flip=True), all_plus(curve))
        assert (distinct.variant, distinct.pairs) == ("forced-pairs", m // 2)


def edge_in_edge_fixture():
    conic = honeycomb(2)
    line = make_line(0, 5, 5)  # vertex (-5,-5); diagonal ray covers the bounded edge
    comps = intersection_components(conic, line)
    assert [c.kind for c in comps] == ["edge-in-edge"]
    comp = comps[0]
    assert comp.inner == "a"
    assert comp.multiplicity == 2
    return conic, line, comp


def test_edge_in_edge_cases():
    conic, line, comp = edge_in_edge_fixture()
    seg = comp.segment
    assert seg == (((Fraction(1), Fraction(1))), (Fraction(2), Fraction(2)))

    twisted_equal = real_lift(comp, all_plus(conic), line_phase(line))
    assert (twisted_equal.variant, twisted_equal.reals) == ("forced-real", 2)
    assert twisted_equal.locations is None
    assert not tangency_possible(comp, all_plus(conic), line_phase(line))

    distinct = real_lift(comp, all_plus(conic), line_phase(line, flip=True))
    assert (distinct.variant, distinct.reals) == ("forced-real", 2)
    assert distinct.locations == seg  # located at the vertices of the inner edge

    untwisting = SignDistribution(
        {p: (-1 if p == (0, 0) else 1) for p in conic.dual.lattice_points}
    )
    phase_nt = phase_from_signs(conic, untwisting)
    indet = real_lift(comp, phase_nt, line_phase(line))
    assert indet.variant == "indeterminate"
    assert set(indet.possible) == {TWO_REAL, CONJ_PAIR, TANGENT_DOUBLE}
    assert tangency_possible(comp, phase_nt, line_phase(line))


def overlap_fixture():
    conic = honeycomb(2)
    line = make_line(0, Fraction(-3, 2), Fraction(-3, 2))  # vertex on the edge interior
    comps = intersection_components(conic, line)
    assert [c.kind for c in comps] == ["segment-overlap"]
    return conic, line, comps[0]


def test_segment_overlap_cases():
    conic, line, comp = overlap_fixture()
    assert comp.multiplicity == 2
    assert comp.segment == ((Fraction(3, 2), Fraction(3, 2)), (Fraction(2), Fraction(2)))

    ph_c = all_plus(conic)
    ph_l = line_phase(line)
    assert ph_c.lines[comp.edge_a] == ph_l.lines[comp.edge_b]
    assert is_relatively_twisted(comp, ph_c, ph_l)
    indet = real_lift(comp, ph_c, ph_l)
    assert indet.variant == "indeterminate"
    assert tangency_possible(comp, ph_c, ph_l)

    other = phase_from_signs(line, SignDistribution({(0, 0): 1, (1, 0): -1, (0, 1): -1}))
    assert ph_c.lines[comp.edge_a] == other.lines[comp.edge_b]
    assert not is_relatively_twisted(comp, ph_c, other)
    forced = real_lift(comp, ph_c, other)
    assert (forced.variant, forced.reals, forced.locations) == ("forced-real", 2, None)
    assert not tangency_possible(comp, ph_c, other)

    distinct = phase_from_signs(line, SignDistribution({(0, 0): 1, (1, 0): -1, (0, 1): 1}))
    assert ph_c.lines[comp.edge_a] != distinct.lines[comp.edge_b]
    out = real_lift(comp, ph_c, distinct)
    assert (out.variant, out.reals) == ("forced-real", 2)
    assert out.locations == comp.segment  # the two vertices of the overlap
    with pytest.raises(PhasesDiffer):
        is_relatively_twisted(comp, ph_c, distinct)


def test_isolated_vertex_component():
    q = curve_from_polynomial(
        TropicalPolynomial({(0, 0): 0, (1, 0): -2, (0, 1): -2, (1, 1): 0})
    )
    line = make_line(0, 0, 4)  # vertex (0,-4); diagonal ray through the vertex (2,-2)
    comps = intersection_components(q, line)
    assert [c.kind for c in comps] == ["isolated-vertex"]
    comp = comps[0]
    assert comp.vertex_owner == "a"
    assert comp.multiplicity == 2
    out = real_lift(comp, all_plus(q), all_plus(line))
    assert out.variant == "indeterminate"
    assert out.non_real_possible
    with pytest.raises(WrongKind):
        tangency_possible(comp, all_plus(q), all_plus(line))


def test_shared_vertex_is_unsupported():
    a = make_line()
    b = make_line()  # same vertex, same rays: identical point sets
    with pytest.raises(UnsupportedConfiguration):
        intersection_components(a, b)


def test_vertex_on_vertex_is_unsupported():
    conic = honeycomb(2)
    line = make_line(0, -1, -1)  # line vertex at the conic vertex (1,1)
    with pytest.raises(UnsupportedConfiguration):
        intersection_components(conic, line)


def _random_overlap_fixture(rng):
    """A segment overlap between a random curve's class edge and a line
    whose vertex sits in the interior of that edge."""
    for _ in range(60):
        d = rng.randrange(2, 4)
        curve = random_nonsingular_curve(rng, d)
        candidates = [
            eid
            for eid in curve.bounded_edges
            if curve.edges[eid].direction in ((1, 1),)
        ]
        if not candidates:
            continue
        eid = rng.choice(candidates)
        t = curve.edge_tmax(eid)
        u0 = curve.edge_point(eid, t * Fraction(rng.randrange(1, 4), 4))
        if curve.vertex_at(u0) is not None:
            continue
        line = make_line(0, -u0[0], -u0[1])
        try:
            comps = intersection_components(curve, line)
        except UnsupportedConfiguration:
            continue
        overlaps = [c for c in comps if c.kind == "segment-overlap"]
        if len(overlaps) != 1:
            continue
        return curve, line, overlaps[0]
    raise RuntimeError("no overlap fixture found")


def _congruence_case(comp):
    """Which branch of the sign rule the fixture lands in: True when the
    opposite cell vertices agree mod 2 after aligning the dual edges."""
    curve_a, curve_b = comp.curve_a, comp.curve_b
    ea, eb = curve_a.edges[comp.edge_a], curve_b.edges[comp.edge_b]
    pa, qa = ea.dual
    pb, qb = eb.dual
    if eb.direction != ea.direction:
        pb, qb = qb, pb
    shift = (pa[0] - pb[0], pa[1] - pb[1])
    ends = dict(comp.end_vertices)
    (v3a,) = [v for v in curve_a.vertex_cell[ends["a"]] if v not in (pa, qa)]
    (v3b,) = [v for v in curve_b.vertex_cell[ends["b"]] if v not in eb.dual]
    dx = v3a[0] - v3b[0] - shift[0]
    dy = v3a[1] - v3b[1] - shift[1]
    return dx % 2 == 0 and dy % 2 == 0


def test_relative_twist_routes_agree(rng):
    seen_cases = set()
    trials = 0
    while trials < 100:
        curve, line, comp = _random_overlap_fixture(rng)
        seen_cases.add(_congruence_case(comp))
        delta = random_sign_distribution(rng, curve)
        phase_c = phase_from_signs(curve, delta)
        want = phase_c.lines[comp.edge_a]
        # the two line structures matching the curve's phase on the overlap
        matching = []
        for signs in (
            {(0, 0): 1, (1, 0): 1, (0, 1): 1},
            {(0, 0): 1, (1, 0): -1, (0, 1): -1},
            {(0, 0): 1, (1, 0): -1, (0, 1): 1},
            {(0, 0): 1, (1, 0): 1, (0, 1): -1},
        ):
            ph = phase_from_signs(line, SignDistribution(dict(signs)))
            if ph.lines[comp.edge_b] == want:
                matching.append(ph)
        assert len(matching) == 2
        for ph_l in matching:
            geo = relative_twist_geometric(comp, phase_c, ph_l)
            sgn = relative_twist_signs(comp, phase_c, ph_l)
            assert geo == sgn
            trials += 1
    assert trials >= 100
    assert seen_cases == {True, False}, "both congruence cases must be exercised"


def test_lift_outcome_symmetry_under_common_translation(rng):
    a = make_line()
    b = make_line(0, -5, -3)
    comp = intersection_components(a, b)[0]
    pa, pb = all_plus(a), line_phase(b, flip=True)
    base = real_lift(comp, pa, pb)
    for eps in ((0, 1), (1, 0), (1, 1)):
        out = real_lift(comp, pa.translate(eps), pb.translate(eps))
        assert (out.variant, out.reals, out.pairs) == (base.variant, base.reals, base.pairs)


def test_transverse_lift_symmetric_in_the_two_curves():
    q = curve_from_polynomial(
        TropicalPolynomial({(0, 0): 0, (1, 0): -2, (0, 1): -2, (1, 1): 0})
    )
    line = make_line(0, 1, 1)
    comp_ab = intersection_components(line, q)[0]
    comp_ba = intersection_components(q, line)[0]
    assert comp_ab.kind == comp_ba.kind == "transverse"
    for ph_l in (line_phase(line), line_phase(line, flip=True)):
        out_ab = real_lift(comp_ab, ph_l, all_plus(q))
        out_ba = real_lift(comp_ba, all_plus(q), ph_l)
        assert (out_ab.variant, out_ab.reals, out_ab.pairs) == (
            out_ba.variant, out_ba.reals, out_ba.pairs,
        )


def test_translation_moves_only_locations(rng):
    conic = honeycomb(2)
    line = make_line(0, 5, 5)
    comp = intersection_components(conic, line)[0]
    out = real_lift(comp, all_plus(conic), line_phase(line, flip=True))
    off = (Fraction(7, 3), Fraction(-2, 5))
    conic2 = conic.translated(off)
    line2 = line.translated(off)
    comp2 = intersection_components(conic2, line2)[0]
    out2 = real_lift(comp2, all_plus(conic2), line_phase(line2, flip=True))
    assert comp2.kind == comp.kind and comp2.multiplicity == comp.multiplicity
    assert (out2.variant, out2.reals, out2.pairs) == (out.variant, out.reals, out.pairs)
    assert out2.locations == tuple((p[0] + off[0], p[1] + off[1]) for p in out.locations)


def test_bezout_small_cases(rng):
    line = make_line(0, Fraction(-13, 7), Fraction(-8, 11))
    for d in (1, 2, 3, 4):
        curve = random_nonsingular_curve(rng, d)
        total = bezout_total(line, curve)
        assert total == d
