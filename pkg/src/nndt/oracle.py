"""Independent brute-force oracles and structural checkers.

These share the exact predicates with the main code but none of its data
structures: the Delaunay oracle enumerates all triples and tests circumdisk
emptiness directly, the NNG oracle scans all pairs, and the structural
checks recompute hulls by gift wrapping.

The triple enumeration is numpy-screened for speed: a wide, conservative
error band around each circumcircle decides only the clear cases, everything
inside the band is settled by the exact predicates, and ill-conditioned
(near-collinear) triples bypass the screen entirely.  Results are therefore
exact; vectorization only prunes.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .geometry import POSITIVE, ZERO, in_circle_xy, orient2d
from .nng import NngGraph

_BAND = 1e-6
_FLAT = 1e-9


@dataclass(frozen=True)
class OracleReport:
    passed: bool
    violations: list[tuple[str, object]]


def _canon(a: int, b: int, c: int) -> tuple[int, int, int]:
    if a <= b and a <= c:
        return (a, b, c)
    if b <= a and b <= c:
        return (b, c, a)
    return (c, a, b)


def brute_delaunay(points) -> set[tuple[int, int, int]]:
    """All CCW triples whose open circumdisk contains no other input point."""
    tris, _ = brute_delaunay_report(points)
    return tris


def brute_delaunay_report(points):
    """Like brute_delaunay, plus a flag for empty-circle cocircularities
    (configurations with more than one valid triangulation)."""
    n = len(points)
    if n < 3:
        raise ValueError("need at least 3 points")
    xs = np.asarray([p[0] for p in points], dtype=np.float64)
    ys = np.asarray([p[1] for p in points], dtype=np.float64)
    idx = np.arange(n)
    ii, jj, kk = np.meshgrid(idx, idx, idx, indexing="ij", sparse=True)
    mask = (ii < jj) & (jj < kk)
    tri_i, tri_j, tri_k = np.nonzero(mask)

    # The circumcenter formula is orientation-independent, so the screen can
    # run on the raw (i < j < k) triples; survivors get their orientation
    # fixed exactly at the end.
    ax = xs[tri_i]
    ay = ys[tri_i]
    bx = xs[tri_j] - ax
    by = ys[tri_j] - ay
    cx = xs[tri_k] - ax
    cy = ys[tri_k] - ay
    d = 2.0 * (bx * cy - by * cx)
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    flat = np.abs(d) <= _FLAT * (b2 + c2)
    good = ~flat
    ux = np.zeros_like(d)
    uy = np.zeros_like(d)
    np.divide(cy * b2 - by * c2, d, out=ux, where=good)
    np.divide(bx * c2 - cx * b2, d, out=uy, where=good)
    ccx = ax + ux
    ccy = ay + uy
    r2 = ux * ux + uy * uy
    pmax2 = float(np.max(xs * xs + ys * ys)) + 1.0
    tol = _BAND * (r2 + ccx * ccx + ccy * ccy + pmax2)
    # Margins via |p|^2 - 2 p.c + (|c|^2 - r^2), matmul-friendly.
    cc2 = ccx * ccx + ccy * ccy - r2
    p2 = xs * xs + ys * ys

    near: dict[int, list[int]] = {}
    # Survivor arrays, compacted after every pass.  Small chunks first: most
    # triples contain one of the first few points tested, so the wide later
    # passes only see the sparse survivors.
    ids = np.nonzero(good)[0]
    scx = ccx[ids]
    scy = ccy[ids]
    sc2 = cc2[ids]
    stl = tol[ids]
    svi = tri_i[ids]
    svj = tri_j[ids]
    svk = tri_k[ids]
    chunk = 8
    lo = 0
    while lo < n and ids.size:
        hi = min(n, lo + chunk)
        marg = (
            p2[None, lo:hi]
            - 2.0 * (scx[:, None] * xs[None, lo:hi] + scy[:, None] * ys[None, lo:hi])
            + sc2[:, None]
        )
        # A triple's own vertices sit on its circle, never below the band;
        # mask them out directly instead of broadcasting id comparisons.
        for verts in (svi, svj, svk):
            rows = np.nonzero((verts >= lo) & (verts < hi))[0]
            if rows.size:
                marg[rows, verts[rows] - lo] = np.inf
        keep = ~((marg < -stl[:, None]).any(axis=1))
        msub = marg[keep]
        ids = ids[keep]
        scx = scx[keep]
        scy = scy[keep]
        sc2 = sc2[keep]
        stl = stl[keep]
        svi = svi[keep]
        svj = svj[keep]
        svk = svk[keep]
        tl = stl[:, None]
        near_mask = (msub <= tl) & (msub >= -tl)
        for row in np.nonzero(near_mask.any(axis=1))[0]:
            near.setdefault(int(ids[row]), []).extend(
                (lo + int(c)) for c in np.nonzero(near_mask[row])[0]
            )
        lo = hi
        chunk = min(2 * chunk, 1024)
    alive = np.zeros(tri_i.size, dtype=bool)
    alive[ids] = True

    cocircular = False
    out = set()

    def settle(a, b, c, suspects):
        nonlocal cocircular
        s = orient2d(points[a], points[b], points[c])
        if s == ZERO:
            return
        if s < 0:
            b, c = c, b
        pa, pb, pc = points[a], points[b], points[c]
        on_circle = False
        for q in suspects:
            if q in (a, b, c):
                continue
            sq = in_circle_xy(
                pa[0], pa[1], pb[0], pb[1], pc[0], pc[1],
                points[q][0], points[q][1],
            )
            if sq == POSITIVE:
                return
            if sq == ZERO:
                on_circle = True
        if on_circle:
            # A fourth point on an otherwise empty circumcircle: the
            # triangulation is not unique.
            cocircular = True
        out.add(_canon(a, b, c))

    for t in np.nonzero(alive)[0]:
        settle(
            int(tri_i[t]), int(tri_j[t]), int(tri_k[t]),
            near.get(int(t), ()),
        )
    # Ill-conditioned triples: settle entirely with the scalar predicates.
    for t in np.nonzero(flat)[0]:
        settle(int(tri_i[t]), int(tri_j[t]), int(tri_k[t]), range(n))
    return out, cocircular


def brute_nng(points) -> NngGraph:
    """All-pairs exact nearest neighbors under the (distance, id) tie order."""
    n = len(points)
    if n < 2:
        raise ValueError("need at least 2 points")
    xs = np.asarray([p[0] for p in points], dtype=np.float64)
    ys = np.asarray([p[1] for p in points], dtype=np.float64)
    nn: dict[int, int] = {}
    chunk = max(1, min(2048, n))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        dx = xs[lo:hi, None] - xs[None, :]
        dy = ys[lo:hi, None] - ys[None, :]
        d2 = dx * dx + dy * dy
        for row in range(hi - lo):
            d2[row, lo + row] = np.inf
        if np.min(d2) == 0.0:
            raise ValueError("duplicate points in nearest-neighbor oracle")
        best = np.argmin(d2, axis=1)  # first minimum = smallest id on ties
        for row in range(hi - lo):
            nn[lo + row] = int(best[row])
    return NngGraph(ids=list(range(n)), nn=nn)


def convex_hull(points) -> list[int]:
    """Monotone chain with exact orientation, keeping collinear boundary
    points, so the result counts every input point on the hull boundary.
    Returned counterclockwise."""
    n = len(points)
    order = sorted(range(n), key=lambda i: points[i])

    def chain(seq):
        out: list[int] = []
        for i in seq:
            # pop only on strict right turns: collinear points stay
            while (
                len(out) >= 2
                and orient2d(points[out[-2]], points[out[-1]], points[i]) < 0
            ):
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def check_delaunay_property(points, triangles) -> OracleReport:
    """Verify the defining properties: every triangle CCW with an empty open
    circumdisk, interior edges shared by exactly two triangles, boundary
    edges by one, and the boundary edge set equal to the convex hull's."""
    violations: list[tuple[str, object]] = []
    n = len(points)
    for tri in triangles:
        a, b, c = tri
        if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
            violations.append(("id-range", tri))
            return OracleReport(False, violations)
        if orient2d(points[a], points[b], points[c]) != POSITIVE:
            violations.append(("not-ccw", tri))
    if violations:
        return OracleReport(False, violations)

    if triangles:
        xs = np.asarray([p[0] for p in points], dtype=np.float64)
        ys = np.asarray([p[1] for p in points], dtype=np.float64)
        tri_arr = np.asarray(triangles)
        ax = xs[tri_arr[:, 0]]
        ay = ys[tri_arr[:, 0]]
        bx = xs[tri_arr[:, 1]] - ax
        by = ys[tri_arr[:, 1]] - ay
        cx = xs[tri_arr[:, 2]] - ax
        cy = ys[tri_arr[:, 2]] - ay
        d = 2.0 * (bx * cy - by * cx)
        b2 = bx * bx + by * by
        c2 = cx * cx + cy * cy
        flat = d <= _FLAT * (b2 + c2)
        good = ~flat
        ux = np.zeros_like(d)
        uy = np.zeros_like(d)
        np.divide(cy * b2 - by * c2, d, out=ux, where=good)
        np.divide(bx * c2 - cx * b2, d, out=uy, where=good)
        ccx = ax + ux
        ccy = ay + uy
        r2 = ux * ux + uy * uy
        pmax2 = float(np.max(xs * xs + ys * ys)) + 1.0
        tol = _BAND * (r2 + ccx * ccx + ccy * ccy + pmax2)
        for t in range(tri_arr.shape[0]):
            if flat[t]:
                suspects = range(n)
            else:
                dx = xs - ccx[t]
                dy = ys - ccy[t]
                marg = dx * dx + dy * dy - r2[t]
                suspects = np.nonzero(marg < tol[t])[0]
            a, b, c = (int(v) for v in tri_arr[t])
            pa, pb, pc = points[a], points[b], points[c]
            for q in suspects:
                q = int(q)
                if q in (a, b, c):
                    continue
                if (
                    in_circle_xy(
                        pa[0], pa[1], pb[0], pb[1], pc[0], pc[1],
                        points[q][0], points[q][1],
                    )
                    == POSITIVE
                ):
                    violations.append(("circumdisk", (tuple(tri_arr[t]), q)))
                    break

    directed: set[tuple[int, int]] = set()
    undirected: dict[tuple[int, int], int] = {}
    for tri in triangles:
        a, b, c = tri
        for u, v in ((a, b), (b, c), (c, a)):
            if (u, v) in directed:
                violations.append(("duplicate-directed-edge", (u, v)))
            directed.add((u, v))
            key = (u, v) if u < v else (v, u)
            undirected[key] = undirected.get(key, 0) + 1
    boundary = {e for e, cnt in undirected.items() if cnt == 1}
    over = [e for e, cnt in undirected.items() if cnt > 2]
    for e in over:
        violations.append(("edge-shared-more-than-twice", e))
    hull = convex_hull(points)
    hull_edges = set()
    for i in range(len(hull)):
        u = hull[i]
        v = hull[(i + 1) % len(hull)]
        hull_edges.add((u, v) if u < v else (v, u))
    if boundary != hull_edges:
        violations.append(
            ("boundary-vs-hull", (sorted(boundary - hull_edges),
                                  sorted(hull_edges - boundary)))
        )
    return OracleReport(not violations, violations)


def check_euler(points, triangles) -> OracleReport:
    """#triangles == 2n - 2 - h with h recomputed by gift wrapping."""
    h = len(convex_hull(points))
    n = len(points)
    want = 2 * n - 2 - h
    if len(triangles) != want:
        return OracleReport(
            False,
            [("euler", {"triangles": len(triangles), "expected": want,
                        "n": n, "hull": h})],
        )
    return OracleReport(True, [])
