"""Exact planar predicates and grid quantization.

Coordinates are IEEE-754 doubles; points are plain ``(x, y)`` tuples.  Every
predicate returns the exact sign (-1, 0, +1) of the underlying determinant: a
floating-point evaluation with a static forward error bound decides the common
case, and an exact rational evaluation settles anything that lands inside the
uncertainty band.  Overflow/underflow of intermediate products is not handled
(coordinates around 1e150 or 1e-150 are out of scope, as in Shewchuk's
predicates).

Sign values are plain ints: NEGATIVE (-1), ZERO (0), POSITIVE (+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

NEGATIVE = -1
ZERO = 0
POSITIVE = 1

_EPS = 2.0 ** -53
_CCW_ERRBOUND_A = (3.0 + 16.0 * _EPS) * _EPS
_ICC_ERRBOUND_A = (10.0 + 96.0 * _EPS) * _EPS

Point = tuple[float, float]


class ContainmentKind(Enum):
    INSIDE = "inside"
    ON_EDGE = "on_edge"
    AT_VERTEX = "at_vertex"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class Containment:
    """Result of a point-in-triangle classification.

    ``index`` names the edge (0: ab, 1: bc, 2: ca) for ON_EDGE and the vertex
    (0: a, 1: b, 2: c) for AT_VERTEX; it is None otherwise.
    """

    kind: ContainmentKind
    index: int | None = None


def _sign(x: float) -> int:
    if x > 0.0:
        return POSITIVE
    if x < 0.0:
        return NEGATIVE
    return ZERO


def _orient2d_exact(ax, ay, bx, by, cx, cy) -> int:
    acx = Fraction(ax) - Fraction(cx)
    acy = Fraction(ay) - Fraction(cy)
    bcx = Fraction(bx) - Fraction(cx)
    bcy = Fraction(by) - Fraction(cy)
    det = acx * bcy - acy * bcx
    if det > 0:
        return POSITIVE
    if det < 0:
        return NEGATIVE
    return ZERO


def orient2d_xy(ax, ay, bx, by, cx, cy) -> int:
    """Sign of the orientation determinant on raw coordinates.

    Positive iff c lies strictly to the left of the directed line a -> b.
    """
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    if detleft > 0.0:
        if detright <= 0.0:
            return _sign(det)
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return _sign(det)
        detsum = -detleft - detright
    else:
        # detleft is exactly zero, so the sign is decided by detright alone
        # (float products are sign-exact barring underflow).
        return _sign(det)
    errbound = _CCW_ERRBOUND_A * detsum
    if det >= errbound or -det >= errbound:
        return _sign(det)
    return _orient2d_exact(ax, ay, bx, by, cx, cy)


def orient2d(a: Point, b: Point, c: Point) -> int:
    """Exact sign of orient(a, b, c); Positive iff c is strictly left of a->b."""
    return orient2d_xy(a[0], a[1], b[0], b[1], c[0], c[1])


def _in_circle_exact(ax, ay, bx, by, cx, cy, px, py) -> int:
    adx = Fraction(ax) - Fraction(px)
    ady = Fraction(ay) - Fraction(py)
    bdx = Fraction(bx) - Fraction(px)
    bdy = Fraction(by) - Fraction(py)
    cdx = Fraction(cx) - Fraction(px)
    cdy = Fraction(cy) - Fraction(py)
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (
        alift * (bdx * cdy - cdx * bdy)
        + blift * (cdx * ady - adx * cdy)
        + clift * (adx * bdy - bdx * ady)
    )
    if det > 0:
        return POSITIVE
    if det < 0:
        return NEGATIVE
    return ZERO


def in_circle_xy(ax, ay, bx, by, cx, cy, px, py) -> int:
    """Sign of the in-circle determinant for a CCW triple on raw coordinates.

    Does not validate the CCW precondition; see in_circle for the checked
    public entry point.
    """
    adx = ax - px
    ady = ay - py
    bdx = bx - px
    bdy = by - py
    cdx = cx - px
    cdy = cy - py

    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    alift = adx * adx + ady * ady

    cdxady = cdx * ady
    adxcdy = adx * cdy
    blift = bdx * bdx + bdy * bdy

    adxbdy = adx * bdy
    bdxady = bdx * ady
    clift = cdx * cdx + cdy * cdy

    det = (
        alift * (bdxcdy - cdxbdy)
        + blift * (cdxady - adxcdy)
        + clift * (adxbdy - bdxady)
    )
    permanent = (
        (abs(bdxcdy) + abs(cdxbdy)) * alift
        + (abs(cdxady) + abs(adxcdy)) * blift
        + (abs(adxbdy) + abs(bdxady)) * clift
    )
    errbound = _ICC_ERRBOUND_A * permanent
    if det > errbound or -det > errbound:
        return _sign(det)
    return _in_circle_exact(ax, ay, bx, by, cx, cy, px, py)


def in_circle(a: Point, b: Point, c: Point, p: Point) -> int:
    """Exact sign; Positive iff p is strictly inside the circumcircle of (a,b,c).

    (a, b, c) must be counterclockwise; anything else is a caller bug and is
    rejected.
    """
    if orient2d(a, b, c) != POSITIVE:
        raise ValueError("in_circle requires a strictly counterclockwise triple")
    return in_circle_xy(a[0], a[1], b[0], b[1], c[0], c[1], p[0], p[1])


def point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> Containment:
    """Classify p against the closed CCW triangle (a, b, c).

    Three exact orientation tests; (a, b, c) must be counterclockwise.
    """
    s_ab = orient2d(a, b, p)
    s_bc = orient2d(b, c, p)
    s_ca = orient2d(c, a, p)
    if s_ab < 0 or s_bc < 0 or s_ca < 0:
        return Containment(ContainmentKind.OUTSIDE)
    zeros = (s_ab == 0) + (s_bc == 0) + (s_ca == 0)
    if zeros == 0:
        return Containment(ContainmentKind.INSIDE)
    if zeros == 1:
        if s_ab == 0:
            return Containment(ContainmentKind.ON_EDGE, 0)
        if s_bc == 0:
            return Containment(ContainmentKind.ON_EDGE, 1)
        return Containment(ContainmentKind.ON_EDGE, 2)
    # Two zero orientations pin p to the shared vertex.
    if s_ab == 0 and s_ca == 0:
        return Containment(ContainmentKind.AT_VERTEX, 0)
    if s_ab == 0 and s_bc == 0:
        return Containment(ContainmentKind.AT_VERTEX, 1)
    return Containment(ContainmentKind.AT_VERTEX, 2)


def quantize(points: list[Point], bits: int) -> list[tuple[int, int]]:
    """Map points affinely from their bounding square onto the integer grid
    [0, 2^bits - 1]^2 using floor; values on the max boundary clamp down.

    Both axes share one scale (the larger bounding-box span), so grid cells
    are square in true space.  Quantized coordinates only ever steer spatial
    sorting; true coordinates stay authoritative for distances and
    predicates.
    """
    if not points:
        raise ValueError("quantize: empty input")
    if not 1 <= bits <= 32:
        raise ValueError("quantize: bits must be in [1, 32]")
    minx = min(p[0] for p in points)
    maxx = max(p[0] for p in points)
    miny = min(p[1] for p in points)
    maxy = max(p[1] for p in points)
    cells = 1 << bits
    top = cells - 1
    span = max(maxx - minx, maxy - miny)
    scale = cells / span if span > 0.0 else 0.0
    out = []
    for x, y in points:
        qx = int(math.floor((x - minx) * scale))
        qy = int(math.floor((y - miny) * scale))
        if qx > top:
            qx = top
        if qy > top:
            qy = top
        out.append((qx, qy))
    return out


@dataclass(frozen=True)
class IngestReport:
    """Outcome of point ingestion: which input rows were dropped as exact
    duplicates (and of which kept row)."""

    kept: int
    dropped: list[tuple[int, int]]  # (dropped input index, kept input index)


def ingest_points(raw) -> tuple[list[Point], IngestReport]:
    """Validate and deduplicate an input point sequence.

    Coordinates must be finite. Exact coordinate duplicates are removed,
    keeping the first occurrence; the report lists every dropped row.
    """
    points: list[Point] = []
    seen: dict[Point, int] = {}
    dropped: list[tuple[int, int]] = []
    for i, p in enumerate(raw):
        x = float(p[0])
        y = float(p[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"non-finite coordinate at input index {i}: ({x}, {y})")
        key = (x, y)
        if key in seen:
            dropped.append((i, seen[key]))
        else:
            seen[key] = i
            points.append(key)
    return points, IngestReport(kept=len(points), dropped=dropped)
