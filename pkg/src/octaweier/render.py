"""SVG output for disk tilings, the hyperbolic 16-gon and flat charts.

Hyperbolic geodesics are drawn as SVG circular arcs (or straight segments
through the centre). Petrie chains are dashed.
"""

import json
import math
from xml.sax.saxutils import escape

from .hyperbolic_tiler import geodesic_arc

SIZE = 440
RADIUS = 200


def _xy(z, scale=RADIUS, shift=0j):
    z = z - shift
    return SIZE / 2 + scale * z.real, SIZE / 2 - scale * z.imag


def _fmt(x):
    return f"{x:.4f}".rstrip("0").rstrip(".")


def _geodesic_cmd(p, q, scale=RADIUS):
    """Path command drawing the geodesic from ``p`` to ``q`` (pen already at ``p``)."""
    x, y = _xy(q, scale)
    arc = geodesic_arc(p, q)
    if arc is None:
        return f"L {_fmt(x)} {_fmt(y)}"
    c, r = arc
    # orientation in screen coordinates, where y points down
    px, py = _xy(p, scale)
    cx, cy = _xy(c, scale)
    cross = (px - cx) * (y - cy) - (py - cy) * (x - cx)
    sweep = 1 if cross > 0 else 0
    rr = _fmt(r * scale)
    return f"A {rr} {rr} 0 0 {sweep} {_fmt(x)} {_fmt(y)}"


def _geodesic_path(points, closed=False, scale=RADIUS):
    x, y = _xy(points[0], scale)
    parts = [f"M {_fmt(x)} {_fmt(y)}"]
    pts = list(points) + ([points[0]] if closed else [])
    for p, q in zip(pts, pts[1:]):
        parts.append(_geodesic_cmd(p, q, scale))
    if closed:
        parts.append("Z")
    return " ".join(parts)


def _document(body, meta=None, size=SIZE):
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">')
    out = [head]
    if meta is not None:
        out.append(f"<metadata>{escape(json.dumps(meta, sort_keys=True))}</metadata>")
    out.extend(body)
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def _disk_outline():
    c = SIZE / 2
    return f'<circle cx="{_fmt(c)}" cy="{_fmt(c)}" r="{RADIUS}" fill="none" stroke="#999" stroke-width="0.8"/>'


def svg_tiling(tiles):
    """One path per triangle."""
    fills = ("#f4f4f4", "#dfe7f1")
    body = [_disk_outline()]
    for t in tiles:
        colour = fills[len(t.word) % 2]
        body.append(f'<path class="tile" d="{_geodesic_path(t.corners, closed=True)}" '
                    f'fill="{colour}" stroke="#333" stroke-width="0.4"/>')
    return _document(body, {"kind": "tiling", "triangles": len(tiles)})


def svg_chart(chart, chains=None):
    """The hyperbolic 16-gon with its faces, a solid boundary and optional dashed Petrie chains."""
    body = [_disk_outline()]
    for pts, face in chart.triangles:
        body.append(f'<path class="face" data-face="{face}" d="{_geodesic_path(pts, closed=True)}" '
                    f'fill="#eef2f7" stroke="#8899aa" stroke-width="0.4"/>')
    body.append(f'<path class="boundary" d="{_geodesic_path(chart.boundary, closed=True)}" '
                f'fill="none" stroke="#000" stroke-width="1.6"/>')
    for k, ch in enumerate(chains or []):
        d = []
        for p, q in ch.segments:
            x, y = _xy(p)
            d.append(f"M {_fmt(x)} {_fmt(y)} {_geodesic_cmd(p, q)}")
        body.append(f'<path class="petrie" data-chain="{k}" d="{" ".join(d)}" fill="none" '
                    f'stroke="#c0392b" stroke-width="0.9" stroke-dasharray="3 2"/>')
    meta = {"kind": "16-gon", "sides": len(chart.sides), "triangles": len(chart.triangles),
            "pairing": chart.pairing, "petrie_chains": len(chains or [])}
    return _document(body, meta)


def svg_flat(flat):
    """Straight-sided flat chart; the metadata carries the cone table."""
    pts = flat.boundary
    span = max(max(abs(p.real), abs(p.imag)) for p in pts) or 1.0
    scale = RADIUS / span
    body = []
    x, y = _xy(pts[0], scale)
    d = [f"M {_fmt(x)} {_fmt(y)}"]
    for p in pts[1:]:
        x, y = _xy(p, scale)
        d.append(f"L {_fmt(x)} {_fmt(y)}")
    d.append("Z")
    body.append(f'<path class="flat" d="{" ".join(d)}" fill="#f7efe2" fill-opacity="0.6" '
                f'stroke="#000" stroke-width="1.2"/>')
    for i, p in enumerate(pts):
        x, y = _xy(p, scale)
        body.append(f'<circle class="corner" data-class="{flat.corner_class[i]}" cx="{_fmt(x)}" '
                    f'cy="{_fmt(y)}" r="2"/>')
    meta = {"kind": "flat", "k": flat.meta["k"],
            "cones_over_pi": {k: round(v / math.pi, 9) for k, v in flat.meta["cones"].items()},
            "self_overlapping": flat.meta["self_overlapping"],
            "winding_about_centre": flat.meta["winding"]}
    return _document(body, meta)
