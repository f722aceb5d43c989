"""Scenario files (.trop.json) and deterministic SVG figures.

A scenario bundles a curve (canonical honeycomb or explicit support and
rational coefficients), exactly one description of its real structure
(signs, twists, or explicit phase lines), an optional second curve for
intersection runs, and an optional point query.  Rationals travel as
"p/q" strings; floats are rejected outright.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .curve import TropicalCurve, TropicalPolynomial, curve_from_polynomial, honeycomb
from .errors import ParseError, ValidationError
from .geometry import IVec, Point, convex_hull, hull_lattice_points
from .gf2 import PhaseLine
from .realstruct import (
    EPS4,
    RealPhaseStructure,
    SignDistribution,
    TwistSet,
    phase_from_signs,
    phase_from_twists,
    signs_from_phase,
    twists_from_phase,
    twists_from_signs,
)

_POINT_KEY = re.compile(r"^\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?$")


def _parse_point_key(key: str, field: str) -> IVec:
    m = _POINT_KEY.match(key)
    if not m:
        raise ParseError(f"bad lattice point key {key!r}", field)
    return (int(m.group(1)), int(m.group(2)))


def _parse_rational(value, field: str) -> Fraction:
    if isinstance(value, bool):
        raise ValidationError("coefficient must be an integer or a 'p/q' string", field)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValidationError("float coefficients are not exact; use 'p/q' strings", field)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"cannot parse rational {value!r}", field) from None
    raise ValidationError(f"cannot parse rational {value!r}", field)


def _format_rational(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _edge_key(pair) -> str:
    (a, b) = sorted((tuple(pair[0]), tuple(pair[1])))
    return f"{a[0]},{a[1]}|{b[0]},{b[1]}"


def _parse_edge_key(key: str, field: str) -> tuple[IVec, IVec]:
    parts = key.split("|")
    if len(parts) != 2:
        raise ParseError(f"bad edge key {key!r}", field)
    return (_parse_point_key(parts[0], field), _parse_point_key(parts[1], field))


@dataclass
class ScenarioSpec:
    """Normalized scenario contents (plain JSON-shaped data)."""

    curve: dict
    real_structure: dict
    second: dict | None = None
    query: dict | None = None


@dataclass
class Scenario:
    """Resolved scenario: concrete curve plus real structure objects."""

    curve: TropicalCurve
    delta: SignDistribution
    phase: RealPhaseStructure
    twists: TwistSet
    second: "Scenario | None" = None
    query: tuple[IVec, tuple[int, int]] | None = None


def _curve_lattice_points(curve_data: dict) -> list[IVec]:
    if "honeycomb" in curve_data:
        d = curve_data["honeycomb"]
        return [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]
    support = [tuple(p) for p in curve_data["support"]]
    return hull_lattice_points(convex_hull(support))


def _normalize_curve(data, field: str) -> dict:
    if not isinstance(data, dict):
        raise ParseError("curve must be an object", field)
    if "honeycomb" in data:
        d = data["honeycomb"]
        if not isinstance(d, int) or d < 1:
            raise ValidationError("honeycomb degree must be a positive integer", field)
        if len(data) != 1:
            raise ValidationError("honeycomb curves take no further fields", field)
        return {"honeycomb": d}
    if "support" not in data or "coefficients" not in data:
        raise ParseError("curve needs either 'honeycomb' or 'support'+'coefficients'", field)
    support = []
    for p in data["support"]:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(c, int) for c in p)):
            raise ParseError(f"bad support point {p!r}", field)
        support.append((p[0], p[1]))
    support = sorted(set(support))
    coeffs = {}
    for key, value in data["coefficients"].items():
        pt = _parse_point_key(key, f"{field}.coefficients")
        coeffs[pt] = _parse_rational(value, f"{field}.coefficients[{key}]")
    missing = [p for p in support if p not in coeffs]
    if missing:
        raise ValidationError(f"support points {missing} have no coefficient", field)
    extra = [p for p in coeffs if p not in support]
    if extra:
        raise ValidationError(f"coefficients given outside the support: {sorted(extra)}", field)
    return {
        "support": [list(p) for p in support],
        "coefficients": {f"{p[0]},{p[1]}": _format_rational(coeffs[p]) for p in support},
    }


def _normalize_structure(data, curve_data: dict, field: str) -> dict:
    if not isinstance(data, dict):
        raise ParseError("real_structure must be an object", field)
    kinds = [k for k in ("signs", "twists", "phase") if k in data]
    if len(kinds) != 1:
        raise ValidationError(
            f"real_structure needs exactly one of signs/twists/phase, got {kinds}", field
        )
    kind = kinds[0]
    if set(data) != {kind}:
        raise ParseError(f"unknown fields in real_structure: {sorted(set(data) - {kind})}", field)
    lattice = _curve_lattice_points(curve_data)
    if kind == "signs":
        signs = data["signs"]
        if signs == "all+":
            table = {p: 1 for p in lattice}
        elif signs == "all-":
            table = {p: -1 for p in lattice}
        elif isinstance(signs, dict):
            table = {}
            for key, value in signs.items():
                pt = _parse_point_key(key, f"{field}.signs")
                if value not in (1, -1):
                    raise ValidationError(f"sign at {pt} must be 1 or -1", field)
                table[pt] = value
            missing = [p for p in lattice if p not in table]
            if missing:
                raise ValidationError(f"signs missing for lattice points {missing}", field)
            extra = [p for p in table if p not in lattice]
            if extra:
                raise ValidationError(f"signs given off the polygon: {sorted(extra)}", field)
        else:
            raise ParseError("signs must be 'all+', 'all-' or a lattice-point map", field)
        return {"signs": {f"{p[0]},{p[1]}": table[p] for p in sorted(table)}}
    if kind == "twists":
        tw = data["twists"]
        if not isinstance(tw, dict) or "edges" not in tw:
            raise ParseError("twists must be an object with an 'edges' list", field)
        edges = []
        for pair in tw["edges"]:
            try:
                (a, b) = pair
            except (TypeError, ValueError):
                raise ParseError(f"bad twist edge {pair!r}", field) from None
            edges.append(sorted((tuple(a), tuple(b))))
        out: dict = {"edges": sorted([list(a), list(b)] for a, b in edges)}
        if "seed" in tw and tw["seed"] is not None:
            seed = tw["seed"]
            a, b = sorted((tuple(seed["edge"][0]), tuple(seed["edge"][1])))
            eps = seed.get("eps", [0, 0])
            out["seed"] = {"edge": [list(a), list(b)], "eps": [eps[0] & 1, eps[1] & 1]}
        return {"twists": out}
    table = {}
    for key, value in data["phase"].items():
        pair = _parse_edge_key(key, f"{field}.phase")
        try:
            e1, e2 = (tuple(value[0]), tuple(value[1]))
        except (TypeError, ValueError, IndexError):
            raise ParseError(f"bad phase line {value!r} for {key}", field) from None
        table[_edge_key(pair)] = sorted(
            ((e1[0] & 1, e1[1] & 1), (e2[0] & 1, e2[1] & 1))
        )
    return {"phase": {k: [list(a), list(b)] for k, (a, b) in sorted(table.items())}}


def load_spec(text: str) -> ScenarioSpec:
    """Parse and normalize a scenario file."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError("scenario must be a JSON object")
    unknown = set(data) - {"curve", "real_structure", "second", "query"}
    if unknown:
        raise ParseError(f"unknown top-level fields: {sorted(unknown)}")
    if "curve" not in data:
        raise ParseError("scenario needs a 'curve'", "curve")
    if "real_structure" not in data:
        raise ParseError("scenario needs a 'real_structure'", "real_structure")
    curve = _normalize_curve(data["curve"], "curve")
    structure = _normalize_structure(data["real_structure"], curve, "real_structure")
    second = None
    if data.get("second") is not None:
        sec = data["second"]
        if not isinstance(sec, dict) or "curve" not in sec or "real_structure" not in sec:
            raise ParseError("'second' needs its own curve and real_structure", "second")
        sec_curve = _normalize_curve(sec["curve"], "second.curve")
        second = {
            "curve": sec_curve,
            "real_structure": _normalize_structure(
                sec["real_structure"], sec_curve, "second.real_structure"
            ),
        }
    query = None
    if data.get("query") is not None:
        q = data["query"]
        if not isinstance(q, dict) or "component" not in q:
            raise ParseError("query needs a 'component'", "query")
        comp = q["component"]
        if isinstance(comp, str):
            comp = list(_parse_point_key(comp, "query.component"))
        eps = q.get("eps", [0, 0])
        query = {"component": [int(comp[0]), int(comp[1])], "eps": [eps[0] & 1, eps[1] & 1]}
    return ScenarioSpec(curve=curve, real_structure=structure, second=second, query=query)


def save_spec(spec: ScenarioSpec) -> str:
    data: dict = {"curve": spec.curve, "real_structure": spec.real_structure}
    if spec.second is not None:
        data["second"] = spec.second
    if spec.query is not None:
        data["query"] = spec.query
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _build_curve(curve_data: dict) -> TropicalCurve:
    if "honeycomb" in curve_data:
        return honeycomb(curve_data["honeycomb"])
    coeffs = {
        _parse_point_key(k, "coefficients"): _parse_rational(v, "coefficients")
        for k, v in curve_data["coefficients"].items()
    }
    return curve_from_polynomial(TropicalPolynomial(coeffs))


def _build_one(curve_data: dict, structure: dict) -> Scenario:
    curve = _build_curve(curve_data)
    if "signs" in structure:
        table = {
            _parse_point_key(k, "signs"): v for k, v in structure["signs"].items()
        }
        delta = SignDistribution(table)
        delta.validate_for(curve)
        phase = phase_from_signs(curve, delta)
        twists = twists_from_signs(curve, delta)
    elif "twists" in structure:
        ids = []
        for a, b in structure["twists"]["edges"]:
            try:
                ids.append(curve.edge_by_dual(tuple(a), tuple(b)))
            except KeyError:
                raise ValidationError(f"{[a, b]} is not a dual edge of the curve", "twists") from None
        for eid in ids:
            if not curve.edges[eid].bounded:
                raise ValidationError("twists may only mark bounded edges", "twists")
        twists = TwistSet.from_edges(curve, ids)
        seed = None
        if "seed" in structure["twists"]:
            s = structure["twists"]["seed"]
            try:
                seed_edge = curve.edge_by_dual(tuple(s["edge"][0]), tuple(s["edge"][1]))
            except KeyError:
                raise ValidationError("seed edge is not a dual edge of the curve", "twists") from None
            seed = (seed_edge, (s["eps"][0], s["eps"][1]))
        phase = phase_from_twists(curve, twists, seed)
        delta = signs_from_phase(curve, phase)
    else:
        lines: list[PhaseLine | None] = [None] * len(curve.edges)
        for key, (a, b) in structure["phase"].items():
            pair = _parse_edge_key(key, "phase")
            try:
                eid = curve.edge_by_dual(*pair)
            except KeyError:
                raise ValidationError(f"{key} is not a dual edge of the curve", "phase") from None
            lines[eid] = PhaseLine(tuple(a), (a[0] ^ b[0], a[1] ^ b[1]))
        missing = [e.index for e in curve.edges if lines[e.index] is None]
        if missing:
            raise ValidationError(f"phase lines missing for edges {missing}", "phase")
        phase = RealPhaseStructure(tuple(lines))
        phase.validate_for(curve)
        delta = signs_from_phase(curve, phase)
        twists = twists_from_phase(curve, phase)
    return Scenario(curve=curve, delta=delta, phase=phase, twists=twists)


def build_scenario(spec: ScenarioSpec) -> Scenario:
    """Resolve a normalized spec into curve and structure objects."""
    scen = _build_one(spec.curve, spec.real_structure)
    if spec.second is not None:
        scen.second = _build_one(spec.second["curve"], spec.second["real_structure"])
    if spec.query is not None:
        comp = tuple(spec.query["component"])
        eps = tuple(spec.query["eps"])
        if comp not in scen.curve.dual.lattice_points:
            raise ValidationError(f"query component {comp} is not a lattice point", "query")
        scen.query = (comp, eps)
    return scen


# -- SVG rendering --------------------------------------------------------


def _fmt(x) -> str:
    """Fixed 4-decimal rendering of an exact rational (floor rounding)."""
    f = Fraction(x)
    scaled = f * 10_000
    n = scaled.numerator // scaled.denominator
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10_000)
    s = f"{sign}{whole}.{frac:04d}".rstrip("0").rstrip(".")
    return s if s not in ("", "-") else "0"


def _squash(p: Point) -> Point:
    """Projective squash of the affine chart onto the open unit triangle."""
    x, y = Fraction(p[0]), Fraction(p[1])
    m = max(Fraction(0), x, y)
    w0 = 1 / (1 + m)
    w1 = 1 / (1 + m - x)
    w2 = 1 / (1 + m - y)
    s = w0 + w1 + w2
    return (w1 / s, w2 / s)


def _ray_limit(anchor: Point, direction: IVec) -> Point:
    """Exact image of the boundary endpoint of a ray under the squash."""
    x, y = Fraction(anchor[0]), Fraction(anchor[1])
    dx, dy = direction
    # weights degenerate along the ray; take the exact limit of _squash
    if (dx, dy) == (-1, 0):
        m = max(Fraction(0), y)
        w = (1 / (1 + m), Fraction(0), 1 / (1 + m - y))
    elif (dx, dy) == (0, -1):
        m = max(Fraction(0), x)
        w = (1 / (1 + m), 1 / (1 + m - x), Fraction(0))
    elif (dx, dy) == (1, 1):
        c = y - x  # invariant along the ray
        if c >= 0:
            w = (Fraction(0), 1 / (1 + c), Fraction(1))
        else:
            w = (Fraction(0), Fraction(1), 1 / (1 - c))
    else:
        raise ValueError(f"ray direction {direction} does not reach the boundary")
    s = sum(w)
    return (w[1] / s, w[2] / s)


class _Svg:
    def __init__(self):
        self.parts: list[str] = []

    def add(self, tag: str, **attrs):
        body = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        self.parts.append(f"<{tag} {body}/>")

    def open_group(self, **attrs):
        body = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        self.parts.append(f"<g {body}>")

    def close_group(self):
        self.parts.append("</g>")

    def polyline(self, pts, **attrs):
        data = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        self.add("polyline", points=data, fill="none", **attrs)

    def polygon(self, pts, **attrs):
        data = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        self.add("polygon", points=data, **attrs)


def _clip_to_box(anchor: Point, direction: IVec, tmax, box):
    """Parameter range of anchor + t*direction inside [x0,x1]x[y0,y1]."""
    x0, x1, y0, y1 = box
    lo, hi = Fraction(0), tmax
    for coord, d, lo_b, hi_b in ((anchor[0], direction[0], x0, x1), (anchor[1], direction[1], y0, y1)):
        if d == 0:
            if coord < lo_b or coord > hi_b:
                return None
            continue
        t_a = Fraction(lo_b - coord, d)
        t_b = Fraction(hi_b - coord, d)
        t_lo, t_hi = (t_a, t_b) if t_a <= t_b else (t_b, t_a)
        lo = max(lo, t_lo)
        hi = t_hi if hi is None else min(hi, t_hi)
    if hi is None or lo > hi:
        return None
    return lo, hi


def _clip_region(curve: TropicalCurve, alpha: IVec, box) -> list[Point]:
    """Complement component of alpha clipped to the frame box."""
    x0, x1, y0, y1 = box
    poly: list[Point] = [
        (Fraction(x0), Fraction(y0)),
        (Fraction(x1), Fraction(y0)),
        (Fraction(x1), Fraction(y1)),
        (Fraction(x0), Fraction(y1)),
    ]
    a_alpha = curve.poly.coefficients[alpha]
    for beta in curve.poly.support:
        if beta == alpha:
            continue
        # keep (alpha - beta) . X >= a_beta - a_alpha
        nx, ny = alpha[0] - beta[0], alpha[1] - beta[1]
        c = curve.poly.coefficients[beta] - a_alpha
        out: list[Point] = []
        m = len(poly)
        for i in range(m):
            p, q = poly[i], poly[(i + 1) % m]
            fp = nx * p[0] + ny * p[1] - c
            fq = nx * q[0] + ny * q[1] - c
            if fp >= 0:
                out.append(p)
            if (fp > 0 and fq < 0) or (fp < 0 and fq > 0):
                t = fp / (fp - fq)
                out.append((p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t))
        poly = out
        if not poly:
            break
    return poly


def render_svg(
    curve: TropicalCurve,
    phase: RealPhaseStructure | None = None,
    twists: TwistSet | None = None,
    locus=None,
    delta: SignDistribution | None = None,
) -> str:
    """Deterministic three-panel figure: dual subdivision, affine curve
    with twist markers and locus shading, and the four-quadrant real part."""
    svg = _Svg()
    xs = [v[0] for v in curve.vertices] or [Fraction(0)]
    ys = [v[1] for v in curve.vertices] or [Fraction(0)]
    box = (min(xs) - 2, max(xs) + 2, min(ys) - 2, max(ys) + 2)
    span = max(box[1] - box[0], box[3] - box[2])

    # panel 1: dual subdivision, unit = 24px
    svg.open_group(id="dual", transform="translate(20,20)")
    du = Fraction(120, max(1, max(p[0] + p[1] for p in curve.dual.lattice_points)))

    def dmap(p):
        return (p[0] * du, 140 - p[1] * du)

    for cell in curve.dual.cells:
        svg.polygon(
            [dmap(p) for p in cell], fill="#f6f2e8", stroke="#777", stroke_width="0.8"
        )
    for p in curve.dual.lattice_points:
        x, y = dmap(p)
        svg.add("circle", cx=_fmt(x), cy=_fmt(y), r="2.4", fill="#333")
        if delta is not None:
            label = "+" if delta.signs[p] > 0 else "−"
            svg.parts.append(
                f'<text x="{_fmt(x + 4)}" y="{_fmt(y - 4)}" font-size="9">{label}</text>'
            )
    svg.close_group()

    # panel 2: affine curve
    scale = Fraction(220, span)
    ox, oy = 200, 20

    def amap(p):
        return (ox + (p[0] - box[0]) * scale, oy + (box[3] - p[1]) * scale)

    svg.open_group(id="curve", transform="translate(0,0)")
    svg.polygon(
        [amap((box[0], box[2])), amap((box[1], box[2])), amap((box[1], box[3])), amap((box[0], box[3]))],
        fill="white", stroke="#aaa", stroke_width="0.8",
    )
    if locus:
        svg.open_group(id="locus")
        for alpha in sorted(locus):
            region = _clip_region(curve, alpha, box)
            if region:
                svg.polygon([amap(p) for p in region], fill="#cfe6ff", stroke="none")
        svg.close_group()
    for e in curve.edges:
        rng = _clip_to_box(curve.edge_anchor(e.index), e.direction, curve.edge_tmax(e.index), box)
        if rng is None:
            continue
        p = curve.edge_point(e.index, rng[0])
        q = curve.edge_point(e.index, rng[1])
        svg.polyline([amap(p), amap(q)], stroke="#222", stroke_width="1.6")
    if twists is not None:
        svg.open_group(id="twist-markers")
        for eid in sorted(twists.edges):
            t = curve.edge_tmax(eid)
            mid = curve.edge_point(eid, t / 2)
            x, y = amap(mid)
            svg.add("circle", cx=_fmt(x), cy=_fmt(y), r="3.2", fill="#1f6fbf")
        svg.close_group()
    for v in curve.vertices:
        x, y = amap(v)
        svg.add("circle", cx=_fmt(x), cy=_fmt(y), r="1.8", fill="#000")
    svg.close_group()

    # panel 3: four-quadrant real part on the diamond model
    qs, qox, qoy = 130, 600, 140

    def qmap(u, v, eps):
        su = -u if eps[0] else u
        sv = -v if eps[1] else v
        return (qox + su * qs, qoy - sv * qs)

    svg.open_group(id="quadrants")
    for eps in EPS4:
        svg.polygon(
            [qmap(Fraction(0), Fraction(0), eps), qmap(Fraction(1), Fraction(0), eps), qmap(Fraction(0), Fraction(1), eps)],
            fill="none", stroke="#bbb", stroke_width="0.8",
        )
    # mirror copies need the projective compactification, so a degree
    if phase is not None and curve.degree is not None:
        for e in curve.edges:
            for eps in sorted(phase.lines[e.index].elements):
                pts = []
                tmax = curve.edge_tmax(e.index)
                if tmax is not None:
                    samples = [tmax * k / 8 for k in range(9)]
                    for t in samples:
                        u, v = _squash(curve.edge_point(e.index, t))
                        pts.append(qmap(u, v, eps))
                else:
                    for t in (0, 1, 2, 4, 8, 16, 64):
                        u, v = _squash(curve.edge_point(e.index, Fraction(t)))
                        pts.append(qmap(u, v, eps))
                    u, v = _ray_limit(curve.edge_anchor(e.index), e.direction)
                    pts.append(qmap(u, v, eps))
                svg.polyline(pts, stroke="#b03030", stroke_width="1.2")
    svg.close_group()

    body = "\n".join(svg.parts)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="760" height="300" viewBox="0 0 760 300">\n'
        f"{body}\n</svg>\n"
    )
