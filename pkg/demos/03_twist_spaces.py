"""Twisted edges as GF(2) vectors: admissible and dividing spaces.

Which subsets of bounded edges can appear as the twisted edges of a
real structure?  Exactly those whose direction sum vanishes mod 2 on
every primitive cycle.  Among them, the dividing ones (even overlap
with every cycle) form a subspace with a pretty basis on honeycombs:
the multi-bridges.
"""

from tropcurve import (
    TwistSet,
    adm_space,
    div_space,
    honeycomb,
    is_admissible,
    is_dividing,
    multi_bridges,
    phase_from_twists,
    primitive_cycles,
    twists_from_phase,
)

for d in (2, 3, 4, 5):
    curve = honeycomb(d)
    g = len(primitive_cycles(curve))
    print(
        f"degree {d}: {len(curve.bounded_edges)} bounded edges, genus {g},"
        f" dim Adm = {adm_space(curve).dim}, dim Div = {div_space(curve).dim}"
        f" = 3(d-1) = {3 * (d - 1)}"
    )

quartic = honeycomb(4)
bridges = multi_bridges(quartic)
print("\nmulti-bridges of the quartic honeycomb")
for b in bridges:
    family = {"v": "vertical", "h": "horizontal", "d": "diagonal"}[b.dual_line[0]]
    print(f"  {family} line {b.dual_line[1]}: {len(b.edges)} parallel edges, direction {b.direction}")

# a single edge of a cycle is never admissible
(cycle, *_) = primitive_cycles(quartic)
single = TwistSet.from_edges(quartic, [min(cycle.edges)])
print("\nsingle cycle edge admissible?", is_admissible(quartic, single))

# a bridge is admissible and dividing, and lifts to a phase structure
bridge = TwistSet.from_edges(quartic, bridges[0].edges)
print("bridge admissible?", is_admissible(quartic, bridge), "dividing?", is_dividing(quartic, bridge))
phase = phase_from_twists(quartic, bridge)
print("round trip recovers the bridge:", twists_from_phase(quartic, phase).edges == bridge.edges)
