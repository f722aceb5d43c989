import random

import pytest

from tropcurve import (
    SignDistribution,
    TropicalPolynomial,
    TwistSet,
    adm_space,
    count_components_direct,
    count_components_matrix,
    curve_from_polynomial,
    div_space,
    extend_sign,
    honeycomb,
    is_admissible,
    is_dividing,
    phase_from_signs,
    phase_from_twists,
    primitive_cycles,
    real_part,
    signs_from_phase,
    twists_from_phase,
    twists_from_signs,
)
from tropcurve.errors import NotAdmissible, UnknownPoint
from tropcurve.realstruct import EPS4, region_class
from tropcurve.selfcheck import random_nonsingular_curve, random_sign_distribution

from conftest import make_line


def test_extend_sign_rule():
    delta = SignDistribution({(1, 0): 1, (1, 1): 1, (0, 0): 1})
    assert extend_sign(delta, (1, 0), (1, 0)) == -1
    assert extend_sign(delta, (0, 0), (1, 0)) == 1
    assert extend_sign(delta, (1, 1), (1, 1)) == 1
    with pytest.raises(UnknownPoint):
        extend_sign(delta, (0, 0), (5, 5))


def test_line_phase_from_constant_signs():
    line = make_line()
    phase = phase_from_signs(line, SignDistribution.constant(line))
    eid = line.edge_by_dual((0, 0), (1, 0))
    assert set(phase.lines[eid].elements) == {(1, 0), (1, 1)}


def test_phase_invariant_under_negation():
    c = honeycomb(3)
    rng = random.Random(3)
    delta = random_sign_distribution(rng, c)
    assert phase_from_signs(c, delta) == phase_from_signs(c, delta.negate())


def test_resigning_translates_the_phase():
    c = honeycomb(3)
    rng = random.Random(4)
    delta = random_sign_distribution(rng, c)
    base = phase_from_signs(c, delta)
    for eps in ((0, 1), (1, 0), (1, 1)):
        moved = phase_from_signs(c, delta.resign(eps))
        assert moved == base.translate(eps)
        assert twists_from_signs(c, delta.resign(eps)).edges == twists_from_signs(c, delta).edges


def test_twist_sign_rule_distinct_case():
    c = honeycomb(2)
    # all-plus signs twist every bounded edge (opposite cell vertices always
    # differ mod 2 on the standard triangulation)
    T = twists_from_signs(c, SignDistribution.constant(c))
    assert T.edges == frozenset(c.bounded_edges)


def test_twist_sign_rule_coincident_case():
    # two cells over a common edge whose opposite vertices agree mod 2
    curve = curve_from_polynomial(
        TropicalPolynomial({(0, 1): 0, (1, 1): 0, (0, 2): -1, (2, 0): -1})
    )
    (eid,) = curve.bounded_edges
    assert set(curve.edges[eid].dual) == {(0, 1), (1, 1)}
    v3v4 = {(0, 2), (2, 0)}  # congruent mod 2
    delta = SignDistribution({(0, 1): 1, (1, 1): 1, (0, 2): 1, (2, 0): 1})
    assert twists_from_signs(curve, delta).edges == frozenset()
    delta2 = SignDistribution({(0, 1): 1, (1, 1): 1, (0, 2): 1, (2, 0): -1})
    assert twists_from_signs(curve, delta2).edges == {eid}
    # the phase route agrees
    assert twists_from_phase(curve, phase_from_signs(curve, delta)).edges == frozenset()
    assert twists_from_phase(curve, phase_from_signs(curve, delta2)).edges == {eid}


def test_honeycomb_all_plus_twists_everything():
    for d in (2, 3, 4, 5):
        c = honeycomb(d)
        T = twists_from_signs(c, SignDistribution.constant(c))
        assert T.edges == frozenset(c.bounded_edges)
        assert len(T.edges) == 3 * d * (d - 1) // 2


def test_admissibility_examples():
    c = honeycomb(3)
    assert is_admissible(c, TwistSet.from_edges(c, []))
    (cycle,) = primitive_cycles(c)
    single = TwistSet.from_edges(c, [min(cycle.edges)])
    assert not is_admissible(c, single)
    with pytest.raises(NotAdmissible):
        is_dividing(c, single)
    assert is_dividing(c, TwistSet.from_edges(c, []))


def test_dividing_counterexample_by_enumeration():
    # some admissible set meets the hexagon in an odd number of edges
    c = honeycomb(3)
    (cycle,) = primitive_cycles(c)
    adm = adm_space(c)
    odd = None
    for v in adm.enumerate():
        T = TwistSet.from_vector(c, v)
        if len(T.edges & cycle.edges) % 2 == 1:
            odd = T
            break
    assert odd is not None
    assert is_admissible(c, odd)
    assert not is_dividing(c, odd)
    assert not div_space(c).contains(odd.vector)


def test_space_dimensions():
    for d in range(2, 7):
        c = honeycomb(d)
        g = (d - 1) * (d - 2) // 2
        assert len(c.bounded_edges) == 3 * d * (d - 1) // 2
        assert adm_space(c).dim == 3 * (d - 1) + g
        assert div_space(c).dim == 3 * (d - 1)
    c2 = honeycomb(2)
    assert adm_space(c2).dim == div_space(c2).dim == 3


def test_dividing_membership_matches_parity_check(rng):
    for _ in range(25):
        d = rng.randrange(2, 5)
        c = random_nonsingular_curve(rng, d)
        delta = random_sign_distribution(rng, c)
        T = twists_from_signs(c, delta)
        assert is_admissible(c, T)
        assert is_dividing(c, T) == div_space(c).contains(T.vector)


def test_phase_from_twists_round_trip():
    for d in (2, 3, 4):
        c = honeycomb(d)
        for vec in adm_space(c).basis:
            T = TwistSet.from_vector(c, vec)
            phase = phase_from_twists(c, T)
            assert twists_from_phase(c, phase).edges == T.edges


def test_phase_from_twists_rejects_inadmissible():
    c = honeycomb(3)
    (cycle,) = primitive_cycles(c)
    with pytest.raises(NotAdmissible):
        phase_from_twists(c, TwistSet.from_edges(c, [min(cycle.edges)]))


def test_all_twisted_conic_recovers_the_constant_structure():
    c = honeycomb(2)
    built = phase_from_twists(c, TwistSet.from_edges(c, c.bounded_edges))
    reference = phase_from_signs(c, SignDistribution.constant(c))
    assert any(built == reference.translate(eps) for eps in EPS4)


def test_phase_from_twists_seeds_agree():
    c = honeycomb(3)
    T = TwistSet.from_edges(c, c.bounded_edges)
    seeds = [(c.bounded_edges[0], eps) for eps in EPS4]
    twist_sets = set()
    for seed in seeds:
        phase = phase_from_twists(c, T, seed)
        assert phase.lines[seed[0]].contains(seed[1])
        twist_sets.add(twists_from_phase(c, phase).edges)
    assert twist_sets == {T.edges}


def test_vertex_condition_holds_for_constructed_phases(rng):
    # every element of every line continues over exactly one other edge
    for _ in range(10):
        c = random_nonsingular_curve(rng, rng.randrange(1, 4))
        phase = phase_from_signs(c, random_sign_distribution(rng, c))
        for v, incident in enumerate(c.vertex_edges):
            for eid in incident:
                for eps in phase.lines[eid].elements:
                    conts = [o for o in incident if o != eid and phase.lines[o].contains(eps)]
                    assert len(conts) == 1


def test_real_part_of_line_is_a_pseudoline():
    line = make_line()
    phase = phase_from_signs(line, SignDistribution.constant(line))
    rp = real_part(line, phase)
    assert len(rp.edge_copies) == 6
    report = count_components_direct(rp)
    assert report.count == 1
    assert report.components[0].kind == "pseudo-line"


def test_real_part_of_conic_is_one_oval():
    c = honeycomb(2)
    # any sign distribution: the conic has no cycles, so one component
    rng = random.Random(9)
    for _ in range(5):
        delta = random_sign_distribution(rng, c)
        T = twists_from_signs(c, delta)
        assert count_components_matrix(c, T) == 1
        report = count_components_direct(real_part(c, phase_from_signs(c, delta)))
        assert report.count == 1
        assert report.components[0].kind == "oval"


def test_stable_quartic_has_two_nested_ovals():
    c = honeycomb(4)
    phase = phase_from_signs(c, SignDistribution.constant(c))
    report = count_components_direct(real_part(c, phase))
    assert report.count == 2
    kinds = [comp.kind for comp in report.components]
    assert kinds == ["oval", "oval"]
    assert sorted(comp.nesting_depth for comp in report.components) == [1, 2]
    inner = max(report.components, key=lambda comp: comp.nesting_depth)
    outer = min(report.components, key=lambda comp: comp.nesting_depth)
    assert report.nesting_parent[report.components.index(inner)] == report.components.index(outer)


def test_oval_flag_matches_region_count_delta(rng):
    # deleting an oval's copies merges the two flanking sides of the full
    # region graph (count drops by one); deleting a pseudo-line changes nothing
    for _ in range(12):
        d = rng.randrange(1, 5)
        c = random_nonsingular_curve(rng, d)
        delta = random_sign_distribution(rng, c)
        rp = real_part(c, phase_from_signs(c, delta))
        report = count_components_direct(rp)
        atoms = [(a, e) for a in c.dual.lattice_points for e in EPS4]

        def n_regions(cut):
            uf = rp.region_find(cut)
            return len({uf.find(x) for x in atoms})

        full = n_regions(rp.edge_copies)
        for comp in report.components:
            without = n_regions(rp.edge_copies - comp.edge_copies)
            assert full - without == (1 if comp.kind == "oval" else 0)
        # nesting is consistent with interior containment
        for i, inner in enumerate(report.components):
            j = report.nesting_parent[i]
            if j is None:
                continue
            outer = report.components[j]
            assert inner.interior_regions < outer.interior_regions
            assert inner.nesting_depth == outer.nesting_depth + 1


def test_matrix_count_equals_model_count(rng):
    for _ in range(40):
        d = rng.randrange(1, 6)
        c = random_nonsingular_curve(rng, d)
        delta = random_sign_distribution(rng, c)
        T = twists_from_signs(c, delta)
        assert is_admissible(c, T)
        phase = phase_from_signs(c, delta)
        assert twists_from_phase(c, phase).edges == T.edges
        direct = count_components_direct(real_part(c, phase))
        assert count_components_matrix(c, T) == direct.count
        assert sum(1 for comp in direct.components if comp.kind == "pseudo-line") == d % 2


def test_empty_twists_give_one_plus_genus():
    for d in (3, 4, 5):
        c = honeycomb(d)
        T = TwistSet.from_edges(c, [])
        g = (d - 1) * (d - 2) // 2
        assert count_components_matrix(c, T) == 1 + g


def test_signs_from_phase_round_trip(rng):
    for _ in range(10):
        c = random_nonsingular_curve(rng, rng.randrange(1, 4))
        delta = random_sign_distribution(rng, c)
        phase = phase_from_signs(c, delta)
        rec = signs_from_phase(c, phase)
        agree = {p: rec.signs[p] * delta.signs[p] for p in delta.signs}
        assert len(set(agree.values())) == 1  # delta up to a global sign


def test_region_class_orbits():
    c = honeycomb(2)
    # corners collapse fully, side points glue in pairs, interior points are free
    assert region_class(c, (0, 0), (1, 1)) == ((0, 0), (0, 0))
    assert region_class(c, (1, 0), (0, 1)) == ((1, 0), (0, 0))  # bottom: glue (0,1)
    assert region_class(c, (1, 1), (1, 0)) == ((1, 1), (0, 1))  # hypotenuse: glue (1,1)
    c4 = honeycomb(4)
    assert region_class(c4, (1, 1), (1, 1)) == ((1, 1), (1, 1))
    assert region_class(c4, (1, 1), (0, 1)) == ((1, 1), (0, 1))


def test_real_part_requires_degree():
    square = curve_from_polynomial(
        TropicalPolynomial({(0, 0): 0, (1, 0): -2, (0, 1): -2, (1, 1): 0})
    )
    phase = phase_from_signs(square, SignDistribution.constant(square))
    from tropcurve.errors import DegreeUnset

    with pytest.raises(DegreeUnset):
        real_part(square, phase)
