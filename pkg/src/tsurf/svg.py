"""Plain-text SVG pictures of cusp links with boundary curves.

Each cusp triangle is drawn as a unit right triangle, two per grid cell,
with corners in their positive order.  Square arcs become segments near the
corners they join, offset by nest, with an arrow at the midpoint.  The
layout is presentational only: triangles are not glued in the picture.
"""
from __future__ import annotations

from .surface import CASE_ANTICLOCKWISE, CASE_CLOCKWISE, CASE_ESSENTIAL, SurfaceComplex, nest_index
from .triangulation import positive_corner_order

CELL = 120
MARGIN = 20
COLOURS = {CASE_CLOCKWISE: "#1f77b4", CASE_ANTICLOCKWISE: "#d62728", CASE_ESSENTIAL: "#2ca02c"}


def _triangle_points(slot: int, columns: int):
    row, col = divmod(slot // 2, columns)
    x0, y0 = MARGIN + col * CELL, MARGIN + row * CELL
    if slot % 2 == 0:
        return [(x0, y0 + CELL), (x0 + CELL, y0 + CELL), (x0, y0)]
    return [(x0 + CELL, y0), (x0, y0), (x0 + CELL, y0 + CELL)]


def _lerp(p, q, s):
    return (p[0] + (q[0] - p[0]) * s, p[1] + (q[1] - p[1]) * s)


def cusp_svg(surface: SurfaceComplex, cusp: int, curves) -> str:
    link = surface.tri.cusp_links[cusp]
    columns = max(1, int(len(link.triangles) ** 0.5 + 0.999) // 2 + 1)
    rows = (len(link.triangles) + 2 * columns - 1) // (2 * columns)
    width = 2 * MARGIN + columns * CELL
    height = 2 * MARGIN + max(rows, 1) * CELL + 20
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="6" '
        'markerHeight="6" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>',
        f'<text x="{MARGIN}" y="{height - 6}" font-size="12">cusp {cusp}</text>',
    ]
    corners = {}
    for slot, (t, v) in enumerate(link.triangles):
        pts = _triangle_points(slot, columns)
        order = positive_corner_order(v)
        corners[(t, v)] = dict(zip(order, pts))
        poly = " ".join(f"{x:.1f},{y:.1f}" for x, y in pts)
        parts.append(f'<polygon points="{poly}" fill="none" stroke="#999" stroke-width="1"/>')
        cx = sum(p[0] for p in pts) / 3
        cy = sum(p[1] for p in pts) / 3
        parts.append(f'<text x="{cx:.1f}" y="{cy:.1f}" font-size="9" fill="#666" '
                     f'text-anchor="middle">{t}.{v}</text>')
    for curve in curves:
        if curve.cusp != cusp:
            continue
        colour = COLOURS.get(curve.case, "#000")
        for t, s, v, w1, w2 in curve.arcs:
            count = surface.count(t)
            nest = nest_index(v, surface.quad(t), s, count)
            depth = 0.2 + 0.5 * (nest + 1) / (count + 1)
            pts = corners[(t, v)]
            centre = _lerp(_lerp(pts[w1], pts[w2], 0.5), _third(pts, w1, w2), depth)
            a = _lerp(pts[w1], centre, 0.35)
            b = _lerp(pts[w2], centre, 0.35)
            mid = _lerp(a, b, 0.5)
            parts.append(f'<path d="M {a[0]:.1f} {a[1]:.1f} L {mid[0]:.1f} {mid[1]:.1f}" '
                         f'stroke="{colour}" stroke-width="2" marker-end="url(#arrow)"/>')
            parts.append(f'<path d="M {mid[0]:.1f} {mid[1]:.1f} L {b[0]:.1f} {b[1]:.1f}" '
                         f'stroke="{colour}" stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _third(pts, w1, w2):
    return next(p for k, p in pts.items() if k not in (w1, w2))
