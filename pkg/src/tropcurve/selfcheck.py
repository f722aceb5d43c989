"""Built-in oracle cross-checks, runnable from the CLI verify command.

Each check pits two independent routes against each other (twist-matrix
count vs quadrant-model count, bridge locus vs pencil sweep vs innermost
oval, degree product vs enumerated multiplicities) on randomized inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .curve import TropicalCurve, TropicalPolynomial, curve_from_polynomial, honeycomb
from .errors import SingularSubdivision, UnsupportedConfiguration
from .gf2 import Gf2Matrix, kernel
from .hyperbolic import honeycomb_locus, hyperbolicity_locus, multi_bridges
from .intersect import bezout_total, intersection_components, real_lift
from .realstruct import (
    SignDistribution,
    TwistSet,
    count_components_direct,
    count_components_matrix,
    div_space,
    is_admissible,
    is_dividing,
    phase_from_signs,
    phase_from_twists,
    real_part,
    twists_from_signs,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def random_nonsingular_curve(rng: random.Random, degree: int, tries: int = 300) -> TropicalCurve:
    """Random concave-dominant integer lift, rejected until non-singular."""
    for _ in range(tries):
        coeffs = {}
        for i in range(degree + 1):
            for j in range(degree + 1 - i):
                base = -2 * (i * i + i * j + j * j)
                coeffs[(i, j)] = Fraction(8 * base + rng.randrange(0, 16), 8)
        try:
            return curve_from_polynomial(TropicalPolynomial(coeffs))
        except SingularSubdivision:
            continue
    raise RuntimeError(f"no non-singular degree-{degree} curve after {tries} tries")


def random_sign_distribution(rng: random.Random, curve: TropicalCurve) -> SignDistribution:
    return SignDistribution({p: rng.choice((1, -1)) for p in curve.dual.lattice_points})


def check_component_counts(rng: random.Random, trials: int) -> CheckResult:
    """Twist-matrix count against the quadrant-model count."""
    for k in range(trials):
        d = rng.randrange(1, 6)
        curve = random_nonsingular_curve(rng, d)
        delta = random_sign_distribution(rng, curve)
        twists = twists_from_signs(curve, delta)
        if not is_admissible(curve, twists):
            return CheckResult("component-counts", False, f"trial {k}: inadmissible twist set from signs")
        via_matrix = count_components_matrix(curve, twists)
        phase = phase_from_signs(curve, delta)
        via_model = count_components_direct(real_part(curve, phase)).count
        if via_matrix != via_model:
            return CheckResult(
                "component-counts", False,
                f"trial {k} (d={d}): matrix {via_matrix} != model {via_model}",
            )
        member = div_space(curve).contains(twists.vector)
        if member != is_dividing(curve, twists):
            return CheckResult("component-counts", False, f"trial {k}: dividing test disagrees")
    return CheckResult("component-counts", True, f"{trials} random curves")


def check_honeycomb_locus(rng: random.Random, trials: int) -> CheckResult:
    """Bridge criterion vs pencil sweep vs innermost oval."""
    for k in range(trials):
        d = rng.randrange(2, 6)
        curve = honeycomb(d)
        bridges = multi_bridges(curve)
        edges: set[int] = set()
        for b in bridges:
            if rng.random() < 0.5:
                edges |= b.edges
        twists = TwistSet.from_edges(curve, edges)
        via_bridges = honeycomb_locus(curve, twists)
        phase = phase_from_twists(curve, twists)
        report = hyperbolicity_locus(curve, phase)
        if report.locus != via_bridges:
            return CheckResult(
                "honeycomb-locus", False,
                f"trial {k} (d={d}): bridges {sorted(via_bridges)} != sweep {sorted(report.locus)}",
            )
        if report.hyperbolic != bool(via_bridges):
            return CheckResult(
                "honeycomb-locus", False,
                f"trial {k} (d={d}): hyperbolic={report.hyperbolic} but locus={sorted(via_bridges)}",
            )
    return CheckResult("honeycomb-locus", True, f"{trials} random dividing twist sets")


def check_bezout(rng: random.Random, trials: int) -> CheckResult:
    """Sum of enumerated multiplicities against the degree product."""
    done = 0
    attempts = 0
    while done < trials and attempts < trials * 20:
        attempts += 1
        da = rng.randrange(1, 5)
        db = rng.randrange(1, 5)
        a = random_nonsingular_curve(rng, da)
        b = random_nonsingular_curve(rng, db)
        shift = (
            Fraction(rng.randrange(-400, 400), 101),
            Fraction(rng.randrange(-400, 400), 103),
        )
        b = b.translated(shift)
        try:
            total = bezout_total(a, b)
            comps = intersection_components(a, b)
        except UnsupportedConfiguration:
            continue
        if any(c.kind != "transverse" for c in comps):
            continue  # generic position only
        if total != da * db:
            return CheckResult(
                "bezout", False, f"(d={da},{db}): total {total} != {da * db}"
            )
        delta_a = random_sign_distribution(rng, a)
        delta_b = random_sign_distribution(rng, b)
        pa, pb = phase_from_signs(a, delta_a), phase_from_signs(b, delta_b)
        for comp in comps:
            out = real_lift(comp, pa, pb)
            if out.variant.startswith("forced"):
                if (out.reals - comp.multiplicity) % 2 != 0:
                    return CheckResult(
                        "bezout", False,
                        f"(d={da},{db}): parity broken on mult-{comp.multiplicity} component",
                    )
        done += 1
    if done < trials:
        return CheckResult("bezout", False, f"only {done}/{trials} generic pairs found")
    return CheckResult("bezout", True, f"{trials} generic pairs")


def check_rank_nullity(rng: random.Random, trials: int) -> CheckResult:
    for _ in range(trials):
        rows = rng.randrange(1, 40)
        cols = rng.randrange(1, 40)
        m = Gf2Matrix(rows, cols, tuple(rng.getrandbits(cols) for _ in range(rows)))
        ker = kernel(m)
        if m.rank() + ker.dim != cols:
            return CheckResult("rank-nullity", False, f"{rows}x{cols} matrix")
        for v in ker.basis:
            if not m.mul_vector(v).is_zero:
                return CheckResult("rank-nullity", False, "kernel vector not annihilated")
    return CheckResult("rank-nullity", True, f"{trials} random matrices")


def run_all(seed: int = 0, trials: int = 25) -> list[CheckResult]:
    rng = random.Random(seed)
    return [
        check_rank_nullity(random.Random(seed + 1), max(trials * 4, 50)),
        check_component_counts(rng, trials),
        check_honeycomb_locus(random.Random(seed + 2), max(trials // 2, 5)),
        check_bezout(random.Random(seed + 3), max(trials // 2, 5)),
    ]
