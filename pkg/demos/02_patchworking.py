"""Combinatorial patchworking: from signs to the topology of a real curve.

A choice of sign at every lattice point of the Newton polygon selects,
for each edge of the tropical curve, two of its four mirror copies in
the quadrant model of the projective plane.  The union of the selected
copies is (up to homeomorphism) the real point set of an actual
algebraic curve degenerating to the tropical one.
"""

import random

from tropcurve import (
    SignDistribution,
    count_components_direct,
    count_components_matrix,
    honeycomb,
    phase_from_signs,
    real_part,
    twists_from_signs,
)

conic = honeycomb(2)
delta = SignDistribution.constant(conic)
phase = phase_from_signs(conic, delta)

print("stable conic (all signs +1)")
for e in conic.edges:
    kind = "bounded" if e.bounded else "ray    "
    print(f"  edge {e.index} {kind} dir {e.direction}: copies {phase.lines[e.index].elements}")

rp = real_part(conic, phase)
report = count_components_direct(rp)
print("  edge copies drawn:", len(rp.edge_copies))
print("  components:", report.count, [c.kind for c in report.components])

# The same count drops out of a GF(2) matrix built from the twisted
# edges, with no topology at all.
T = twists_from_signs(conic, delta)
print("  matrix count:", count_components_matrix(conic, T))

# A degree-5 curve with random signs: the two counts always agree.
quintic = honeycomb(5)
rng = random.Random(7)
print("\nrandom sign distributions on the degree-5 honeycomb")
for k in range(4):
    delta = SignDistribution({p: rng.choice((1, -1)) for p in quintic.dual.lattice_points})
    T = twists_from_signs(quintic, delta)
    direct = count_components_direct(real_part(quintic, phase_from_signs(quintic, delta)))
    kinds = ", ".join(
        f"{c.kind}@depth{c.nesting_depth}" if c.kind == "oval" else c.kind
        for c in direct.components
    )
    print(
        f"  trial {k}: matrix {count_components_matrix(quintic, T)}"
        f" = direct {direct.count}  ({kinds})"
    )
