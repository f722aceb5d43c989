import random
from fractions import Fraction

import pytest

from tropcurve import (
    TropicalPolynomial,
    complement_components,
    curve_from_polynomial,
    honeycomb,
    primitive_cycles,
)
from tropcurve.errors import DegeneratePolygon, DegreeUnset, SingularSubdivision
from tropcurve.geometry import canonical_direction, det2, rot90, sub_i
from tropcurve.selfcheck import random_nonsingular_curve


def test_line_from_all_zero_coefficients(make_line=None):
    curve = curve_from_polynomial(TropicalPolynomial({(0, 0): 0, (1, 0): 0, (0, 1): 0}))
    assert curve.degree == 1
    assert curve.vertices == ((Fraction(0), Fraction(0)),)
    assert len(curve.bounded_edges) == 0
    assert sorted(e.direction for e in curve.edges) == [(-1, 0), (0, -1), (1, 1)]


def test_quadratic_lift_conic_counts():
    # independent oracle: Euler counts of the standard triangulation of the
    # 2-simplex (4 unit cells, 3 interior edges, 6 boundary edges)
    curve = curve_from_polynomial(
        TropicalPolynomial({(i, j): -(i * i + i * j + j * j) for i in range(3) for j in range(3 - i)})
    )
    assert len(curve.vertices) == 4
    assert len(curve.bounded_edges) == 3
    assert len(curve.edges) - len(curve.bounded_edges) == 6
    assert len(curve.dual.cells) == 4


def test_flat_lift_is_singular():
    with pytest.raises(SingularSubdivision):
        curve_from_polynomial(
            TropicalPolynomial({(i, j): 0 for i in range(3) for j in range(3 - i)})
        )


def test_skipped_lattice_point_is_singular():
    # coefficients pulling (1,1) below every upper facet of the square
    with pytest.raises(SingularSubdivision):
        curve_from_polynomial(
            TropicalPolynomial({(0, 0): 0, (2, 0): 0, (0, 2): 0, (1, 1): -10, (1, 0): -1,
                                (0, 1): -1, (2, 1): -3, (1, 2): -3, (2, 2): -2})
        )


def test_degenerate_polygon():
    with pytest.raises(DegeneratePolygon):
        curve_from_polynomial(TropicalPolynomial({(0, 0): 0, (1, 0): 0, (2, 0): 0}))


def test_min_convention_rejected_by_shape():
    # negative exponents cannot encode a min-plus input
    with pytest.raises(ValueError):
        TropicalPolynomial({(-1, 0): 0, (0, 0): 0, (0, 1): 0})


def _check_structure(curve):
    # balancing, 3-valence, vertex count, dual orthogonality
    area2 = 0
    for cell in curve.dual.cells:
        (a, b, c) = cell
        area2 += abs(det2(sub_i(b, a), sub_i(c, a)))
    assert area2 == len(curve.dual.cells)
    assert len(curve.vertices) == len(curve.dual.cells)
    for v, incident in enumerate(curve.vertex_edges):
        assert len(incident) == 3
        sx = sy = 0
        for eid in incident:
            e = curve.edges[eid]
            d = e.direction if (e.tail == v or not e.bounded) else (-e.direction[0], -e.direction[1])
            sx += d[0]
            sy += d[1]
        assert (sx, sy) == (0, 0)
    for e in curve.edges:
        assert rot90(sub_i(e.dual[1], e.dual[0])) == e.direction


def test_honeycomb_invariants():
    for d in range(1, 7):
        c = honeycomb(d)
        assert c.degree == d
        assert c.is_honeycomb()
        assert len(c.bounded_edges) == 3 * d * (d - 1) // 2
        assert len(c.vertices) == d * d
        _check_structure(c)


def test_honeycomb_examples():
    assert len(honeycomb(1).bounded_edges) == 0
    assert len(honeycomb(4).bounded_edges) == 18
    assert len(primitive_cycles(honeycomb(6))) == 10


def test_regular_subdivision_exactness():
    # every curve vertex makes its three cell monomials equal and all
    # others strictly smaller (100 random lifts, degrees <= 4)
    rng = random.Random(31)
    for _ in range(100):
        d = rng.randrange(1, 5)
        curve = random_nonsingular_curve(rng, d)
        poly = curve.poly
        for vid, pt in enumerate(curve.vertices):
            cell = curve.vertex_cell[vid]
            vals = {ij: poly.term(ij, pt) for ij in poly.support}
            top = max(vals.values())
            for ij in poly.support:
                if ij in cell:
                    assert vals[ij] == top
                else:
                    assert vals[ij] < top
        _check_structure(curve)


def test_primitive_cycles_counts_and_hexagons():
    assert primitive_cycles(honeycomb(1)) == []
    for d in range(2, 8):
        c = honeycomb(d)
        cycles = primitive_cycles(c)
        assert len(cycles) == (d - 1) * (d - 2) // 2
        for cyc in cycles:
            assert len(cyc.edges) == 6


def test_cycle_of_cubic_is_a_hexagon():
    # independent oracle: count dual-subdivision edges at the interior point
    c = honeycomb(3)
    incident = [se for se in c.dual.edges if (1, 1) in se.points and se.interior]
    assert len(incident) == 6
    (cycle,) = primitive_cycles(c)
    assert cycle.center == (1, 1)
    assert len(cycle.edges) == 6


def test_complement_components_counts():
    for d in range(1, 8):
        comps = complement_components(honeycomb(d))
        assert len(comps) == (d + 1) * (d + 2) // 2
        bounded = [c for c in comps if c.bounded]
        assert len(bounded) == (d - 1) * (d - 2) // 2
    comps = complement_components(honeycomb(4))
    assert {c.dual_point for c in comps if c.bounded} == {(1, 1), (1, 2), (2, 1)}


def test_complement_components_need_degree():
    square = curve_from_polynomial(
        TropicalPolynomial({(0, 0): 0, (1, 0): -2, (0, 1): -2, (1, 1): 0})
    )
    assert square.degree is None
    with pytest.raises(DegreeUnset):
        complement_components(square)


def test_honeycomb_edge_directions():
    c = honeycomb(5)
    for e in c.edges:
        assert canonical_direction(e.direction) in {(1, 0), (0, 1), (1, 1)}


def test_translation_moves_vertices_only():
    c = honeycomb(3)
    moved = c.translated((Fraction(5, 3), Fraction(-7, 2)))
    assert moved.dual == c.dual
    assert moved.degree == 3
    assert moved.vertices[0] == (c.vertices[0][0] + Fraction(5, 3), c.vertices[0][1] - Fraction(7, 2))
    _check_structure(moved)


def test_region_points_dominate():
    for d in (1, 2, 4):
        c = honeycomb(d)
        for alpha in c.dual.lattice_points:
            w = c.region_point(alpha)
            assert c.dominating(w) == alpha
