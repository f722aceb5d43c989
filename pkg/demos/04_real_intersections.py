"""Real lifts of tropical intersections.

Two real curves degenerating onto tropical limits meet in points whose
reality is often forced by the combinatorics alone: transverse points
split by parity and phase agreement, and overlap components split by
twists.  Only specific configurations stay indeterminate, and those are
exactly the ones where a tangency is possible.
"""

from fractions import Fraction

from tropcurve import (
    SignDistribution,
    TropicalPolynomial,
    curve_from_polynomial,
    honeycomb,
    intersection_components,
    phase_from_signs,
    real_lift,
    tangency_possible,
)


def line(c0, c1, c2):
    return curve_from_polynomial(
        TropicalPolynomial({(0, 0): Fraction(c0), (1, 0): Fraction(c1), (0, 1): Fraction(c2)})
    )


def show(comp, outcome):
    where = comp.point if comp.point is not None else comp.segment
    print(f"  {comp.kind} (mult {comp.multiplicity}) at {where}")
    if outcome.variant.startswith("forced"):
        loc = "" if outcome.locations is None else f" located at {outcome.locations}"
        print(f"    -> {outcome.reals} real + {outcome.pairs} conjugate pair(s){loc}")
    else:
        extra = " (a non-real pair can appear)" if outcome.non_real_possible else ""
        print(f"    -> indeterminate: {', '.join(outcome.possible) or 'unclassified'}{extra}")


conic = honeycomb(2)
ph_conic = phase_from_signs(conic, SignDistribution.constant(conic))

print("conic vs a line whose diagonal ray swallows the bounded diagonal edge")
covering = line(0, 5, 5)
for flip in (False, True):
    delta = SignDistribution({(0, 0): 1, (1, 0): -1 if flip else 1, (0, 1): 1})
    ph_line = phase_from_signs(covering, delta)
    label = "distinct phases" if flip else "equal phases (edge twisted)"
    print(f"- {label}")
    for comp in intersection_components(conic, covering):
        show(comp, real_lift(comp, ph_conic, ph_line))

print("\nconic vs a line with vertex on the interior of that edge (segment overlap)")
overlap_line = line(0, Fraction(-3, 2), Fraction(-3, 2))
(comp,) = intersection_components(conic, overlap_line)
for signs, label in (
    ({(0, 0): 1, (1, 0): 1, (0, 1): 1}, "relatively twisted"),
    ({(0, 0): 1, (1, 0): -1, (0, 1): -1}, "relatively non-twisted"),
):
    ph_line = phase_from_signs(overlap_line, SignDistribution(dict(signs)))
    print(f"- equal phases, {label}")
    show(comp, real_lift(comp, ph_conic, ph_line))
    print("    tangency possible?", tangency_possible(comp, ph_conic, ph_line))

print("\na high-multiplicity transverse point (det = 4)")
hook = curve_from_polynomial(
    TropicalPolynomial({(0, 0): 0, (1, 0): -9, (1, 1): -1, (1, 2): -1, (1, 3): -9})
)
ray = next(e for e in hook.edges if not e.bounded and e.direction == (-3, 1))
anchor = hook.edge_anchor(ray.index)
vx, vy = anchor[0] - 6 - 3, anchor[1] + 2 - 3  # line vertex southwest of a ray point
probe = line(0, -vx, -vy)
comps = [c for c in intersection_components(probe, hook) if c.multiplicity == 4]
assert comps, "probe line must cross the steep ray"
ph_hook = phase_from_signs(hook, SignDistribution.constant(hook))
for flip in (False, True):
    delta = SignDistribution({(0, 0): 1, (1, 0): -1 if flip else 1, (0, 1): 1})
    print("- phases", "distinct" if flip else "equal")
    for comp in comps:
        show(comp, real_lift(comp, phase_from_signs(probe, delta), ph_hook))
