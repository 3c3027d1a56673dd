"""Stable file formats: JSON documents, the survey table, and SVG rendering.

Exact rationals serialize as "p/q" strings ("p" when the denominator is 1)
so no binary-float drift ever enters a document; floats appear only in
display-only fields suffixed ``_approx``.  All output is deterministic:
identical inputs produce bit-identical documents.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from . import reeb
from .errors import MalformedDocument
from .lattice import WindingVerdict
from .plumbing import det_intersection
from .reeb import ReebItinerary
from .toric import BoundaryReport, MomentPolygon, PolygonEdge

SURVEY_HEADER = "# plumbtoric-survey v1"
SURVEY_COLUMNS = ("s", "verdict", "k", "l", "vs_pi", "vs_2pi", "det", "det_check")


def format_fraction(x) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


def parse_fraction(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedDocument("bad rational %r: %s" % (text, exc)) from None


def _vec(v) -> list:
    return [int(v[0]), int(v[1])]


def winding_to_doc(w: WindingVerdict) -> dict:
    return {
        "vs_pi": w.vs_pi.value,
        "vs_2pi": w.vs_two_pi.value,
        "crossings_of_start": w.crossings_of_start,
        "crossings_of_antipode": w.crossings_of_antipode,
        "final_landing": w.final_landing.value if w.final_landing else None,
        "swept_degrees_approx": w.approx_degrees,
    }


def torsion_to_doc(t: reeb.TorsionReport) -> dict:
    return {
        "contact_invariant": t.contact_invariant.value,
        "at": t.at,
        "at_simp": t.at_simp.value if t.at_simp else None,
    }


def report_to_doc(report: BoundaryReport) -> dict:
    return {
        "chain": list(report.chain),
        "pivot": report.pivot,
        "rays": [_vec(w) for w in report.rays.w],
        "winding": winding_to_doc(report.winding),
        "verdict": report.verdict.value,
        "lens": {"k": report.lens[0], "l": report.lens[1]},
        "det": det_intersection(report.chain),
        "det_check": report.det_check,
        "cone_is_whole_plane": report.cone_is_whole_plane,
        "torsion": torsion_to_doc(reeb.torsion_verdict(report.winding)),
    }


def polygon_to_doc(poly: MomentPolygon) -> dict:
    return {
        "vertices": [[format_fraction(x), format_fraction(y)] for x, y in poly.vertices],
        "edges": [
            {
                "start": e.start,
                "end": e.end,
                "self_intersection": e.self_intersection,
                "area": format_fraction(e.area),
            }
            for e in poly.edges
        ],
        "rays": [_vec(poly.rays[0]), _vec(poly.rays[1])],
    }


def polygon_from_doc(doc: dict) -> MomentPolygon:
    try:
        vertices = tuple(
            (parse_fraction(x), parse_fraction(y)) for x, y in doc["vertices"]
        )
        edges = tuple(
            PolygonEdge(
                start=int(e["start"]),
                end=int(e["end"]),
                self_intersection=int(e["self_intersection"]),
                area=parse_fraction(e["area"]),
            )
            for e in doc["edges"]
        )
        rays = (tuple(int(c) for c in doc["rays"][0]), tuple(int(c) for c in doc["rays"][1]))
    except (KeyError, TypeError, IndexError) as exc:
        raise MalformedDocument("bad moment-polygon document: %s" % exc) from None
    return MomentPolygon(vertices=vertices, edges=edges, rays=rays)


def itinerary_from_doc(doc: dict) -> ReebItinerary:
    try:
        vertices = tuple(
            (parse_fraction(x), parse_fraction(y)) for x, y in doc["vertices"]
        )
        start_ray = tuple(int(c) for c in doc["start_ray"])
        end_ray = tuple(int(c) for c in doc["end_ray"])
    except (KeyError, TypeError, IndexError) as exc:
        raise MalformedDocument("bad itinerary document: %s" % exc) from None
    return ReebItinerary(vertices=vertices, start_ray=start_ray, end_ray=end_ray)


def families_to_doc(families: Sequence[reeb.FamilyCount]) -> list:
    return [
        {
            "vertex": fc.family.vertex,
            "slope": _vec(fc.family.slope),
            "base_action": format_fraction(fc.family.base_action),
            "max_multiplicity": fc.max_multiplicity,
        }
        for fc in families
    ]


def current_to_doc(current: reeb.ReebCurrent) -> list:
    entries = sorted(
        current.entries,
        key=lambda om: (om[0].base_action, om[0].eps_exponent, om[0].kind.value),
    )
    return [
        {
            "kind": orbit.kind.value,
            "base_action": format_fraction(orbit.base_action),
            "eps_exponent": orbit.eps_exponent,
            "cz": orbit.cz,
            "multiplicity": mult,
        }
        for orbit, mult in entries
    ]


def current_from_doc(entries: list) -> reeb.ReebCurrent:
    out = []
    try:
        for e in entries:
            kind = reeb.OrbitKind(e["kind"])
            base = parse_fraction(e.get("base_action", "1"))
            default_cz = 1 if kind is reeb.OrbitKind.ELLIPTIC else 0
            orbit = reeb.PerturbedOrbit(
                kind=kind,
                base_action=base,
                eps_exponent=int(
                    e.get("eps_exponent", 1 if kind is reeb.OrbitKind.ELLIPTIC else -1)
                ),
                cz=int(e.get("cz", default_cz)),
            )
            out.append((orbit, int(e.get("multiplicity", 1))))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument("bad Reeb-current document: %s" % exc) from None
    return reeb.ReebCurrent(tuple(out))


# ---------------------------------------------------------------------------
# survey

def survey_row(chain, report: BoundaryReport) -> tuple:
    """Row for the enumerated chain; ``det`` is its intersection determinant,
    the remaining fields describe the classified (possibly reduced) chain."""
    return (
        ",".join(str(v) for v in chain),
        report.verdict.value,
        str(report.lens[0]),
        str(report.lens[1]),
        report.winding.vs_pi.value,
        report.winding.vs_two_pi.value,
        str(det_intersection(chain)),
        "true" if report.det_check else "false",
    )


def survey_to_csv(rows: Sequence[tuple]) -> str:
    lines = [SURVEY_HEADER, ",".join(SURVEY_COLUMNS)]
    for row in rows:
        lines.append('"%s",%s' % (row[0], ",".join(row[1:])))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# SVG rendering

_SVG_SCALE = 480.0


def _fmt(x: float) -> str:
    return "%.3f" % x


def render_svg(poly: MomentPolygon) -> str:
    """Deterministic SVG 1.1 picture of a moment polygon.

    Edges are labeled with self-intersection and area, the terminal rays are
    dashed radial lines through the end vertices, the origin is marked, and a
    green piecewise-linear arc sketches the boundary curve transverse to the
    radial rays (display only).
    """
    pts = [(float(x), float(y)) for x, y in poly.vertices]
    ray_tips = []
    for anchor, _ray in ((pts[0], poly.rays[0]), (pts[-1], poly.rays[1])):
        ray_tips.append((anchor[0] * 1.45, anchor[1] * 1.45))
    xs = [p[0] for p in pts + ray_tips] + [0.0]
    ys = [p[1] for p in pts + ray_tips] + [0.0]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    margin = 0.08 * span
    x0, y1 = min(xs) - margin, max(ys) + margin
    scale = _SVG_SCALE / (span + 2 * margin)

    def to_px(p):
        return ((p[0] - x0) * scale, (y1 - p[1]) * scale)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%d" height="%d" viewBox="0 0 %d %d">' % ((_SVG_SCALE,) * 4),
        '<g font-family="monospace" font-size="11">',
    ]
    ox, oy = to_px((0.0, 0.0))
    parts.append(
        '<circle class="origin" cx="%s" cy="%s" r="3" fill="black"/>'
        % (_fmt(ox), _fmt(oy))
    )
    for tip, cls in ((ray_tips[0], "ray start-ray"), (ray_tips[1], "ray end-ray")):
        tx, ty = to_px(tip)
        parts.append(
            '<line class="%s" x1="%s" y1="%s" x2="%s" y2="%s" '
            'stroke="blue" stroke-dasharray="6,4"/>' % (cls, _fmt(ox), _fmt(oy), _fmt(tx), _fmt(ty))
        )
    for e in poly.edges:
        (ax, ay), (bx, by) = to_px(pts[e.start]), to_px(pts[e.end])
        parts.append(
            '<line class="edge" x1="%s" y1="%s" x2="%s" y2="%s" '
            'stroke="darkorange" stroke-width="2"/>' % (_fmt(ax), _fmt(ay), _fmt(bx), _fmt(by))
        )
        mx, my = (ax + bx) / 2, (ay + by) / 2
        parts.append(
            '<text class="edge-label" x="%s" y="%s">s=%d a=%s</text>'
            % (_fmt(mx + 4), _fmt(my - 4), e.self_intersection, format_fraction(e.area))
        )
    arc = [ray_tips[0]] + pts + [ray_tips[1]]
    arc_pts = " ".join(
        "%s,%s" % tuple(map(_fmt, to_px((0.35 * p[0], 0.35 * p[1])))) for p in arc
    )
    parts.append(
        '<polyline class="boundary" points="%s" fill="none" stroke="green" '
        'stroke-dasharray="2,3"/>' % arc_pts
    )
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
