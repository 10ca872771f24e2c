"""Deterministic SVG rendering of a triangulation: each undirected edge is
stroked exactly once, the view box fits the point bounding box with a 5%
margin, and output bytes depend only on the input."""

from __future__ import annotations


def render_svg(points, triangles, path) -> None:
    if not points:
        raise ValueError("nothing to render")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    w = maxx - minx or 1.0
    h = maxy - miny or 1.0
    mx = 0.05 * w
    my = 0.05 * h
    # SVG y grows downward; flip by mapping y -> maxy - y.
    edges = set()
    for a, b, c in triangles:
        for u, v in ((a, b), (b, c), (c, a)):
            edges.add((u, v) if u < v else (v, u))
    stroke = max(w, h) / 500.0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{minx - mx:.9g} {-my:.9g} {w + 2 * mx:.9g} {h + 2 * my:.9g}">',
        f'<g stroke="black" stroke-width="{stroke:.9g}" '
        'stroke-linecap="round" fill="none">',
    ]
    for u, v in sorted(edges):
        x1, y1 = points[u]
        x2, y2 = points[v]
        out.append(
            f'<line x1="{x1:.9g}" y1="{maxy - y1:.9g}" '
            f'x2="{x2:.9g}" y2="{maxy - y2:.9g}"/>'
        )
    out.append("</g>")
    r = max(w, h) / 250.0
    out.append('<g fill="black">')
    for x, y in points:
        out.append(f'<circle cx="{x:.9g}" cy="{maxy - y:.9g}" r="{r:.9g}"/>')
    out.append("</g>")
    out.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")
