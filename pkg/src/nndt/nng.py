"""Exact nearest-neighbor graphs over point subsets, their connected
components, and the spread diagnostic.

Nearest neighbors are exact under the (squared distance, smaller id) tie
order.  Each query runs a best-first descent of the compressed quadtree with
true-bounding-box distance pruning, seeded with the query point's immediate
z-order neighbors; results never depend on the quantization resolution
because pruning compares true-coordinate distances only (with a hair of
slack so box-distance rounding can never hide an equal-distance tie).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadtree import CompressedQuadtree, build_compressed_quadtree

_PRUNE_SLACK = 1.0 + 1e-12


@dataclass
class NngGraph:
    """Directed 1-nearest-neighbor map over a queried subset."""

    ids: list[int]
    nn: dict[int, int]

    def edges(self):
        return self.nn.items()


@dataclass(frozen=True)
class Component:
    members: list[int]  # ascending point ids
    has_s: bool
    first_t: int | None  # min insertion index, only for components without S


@dataclass(frozen=True)
class Components:
    components: list[Component]


class UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _nn_local(tree: CompressedQuadtree, pos_of: list[int]) -> list[int]:
    """Exact nearest neighbor (local index) for every point in the tree."""
    xs = tree.xs
    ys = tree.ys
    order = tree.order
    children = tree.children
    lo_arr = tree.range_lo
    hi_arr = tree.range_hi
    bminx = tree.bb_minx
    bminy = tree.bb_miny
    bmaxx = tree.bb_maxx
    bmaxy = tree.bb_maxy
    root = tree.root
    n = len(order)
    out = [-1] * n
    for i in range(n):
        qx = xs[i]
        qy = ys[i]
        # Seed with the z-order neighbors: usually already the answer, which
        # makes the descent prune almost everything.
        best_d2 = math.inf
        best = -1
        pos = pos_of[i]
        for k in (pos - 2, pos - 1, pos + 1, pos + 2):
            if 0 <= k < n:
                j = order[k]
                if j == i:
                    continue
                dx = xs[j] - qx
                dy = ys[j] - qy
                d2 = dx * dx + dy * dy
                if d2 < best_d2 or (d2 == best_d2 and j < best):
                    best_d2 = d2
                    best = j
        stack = [(0.0, root)]
        pop = stack.pop
        push = stack.append
        while stack:
            nd2, node = pop()
            if nd2 > best_d2 * _PRUNE_SLACK:
                continue
            ch = children[node]
            if not ch:
                lo = lo_arr[node]
                hi = hi_arr[node]
                if hi - lo == 1:
                    j = order[lo]
                    if j != i:
                        dx = xs[j] - qx
                        dy = ys[j] - qy
                        d2 = dx * dx + dy * dy
                        if d2 < best_d2 or (d2 == best_d2 and j < best):
                            best_d2 = d2
                            best = j
                else:
                    for k in range(lo, hi):
                        j = order[k]
                        if j == i:
                            continue
                        dx = xs[j] - qx
                        dy = ys[j] - qy
                        d2 = dx * dx + dy * dy
                        if d2 < best_d2 or (d2 == best_d2 and j < best):
                            best_d2 = d2
                            best = j
                continue
            for c in ch:
                dx = bminx[c] - qx
                if dx < 0.0:
                    dx = qx - bmaxx[c]
                    if dx < 0.0:
                        dx = 0.0
                dy = bminy[c] - qy
                if dy < 0.0:
                    dy = qy - bmaxy[c]
                    if dy < 0.0:
                        dy = 0.0
                d2 = dx * dx + dy * dy
                if d2 <= best_d2 * _PRUNE_SLACK:
                    push((d2, c))
        out[i] = best
    return out


def nearest_neighbor_graph(points, ids=None, bits=None) -> NngGraph:
    """Exact nearest neighbor for each point of the subset.

    points: sequence of (x, y); ids: aligned point ids (defaults to
    0..n-1).  Ties break toward the smaller id.
    """
    n = len(points)
    if n < 2:
        raise ValueError("nearest_neighbor_graph needs at least 2 points")
    if ids is None:
        ids = list(range(n))
    xs = np.fromiter((p[0] for p in points), dtype=np.float64, count=n)
    ys = np.fromiter((p[1] for p in points), dtype=np.float64, count=n)
    return _nng_from_arrays(xs, ys, list(ids), bits)


def _nng_from_arrays(xs, ys, ids: list[int], bits=None) -> NngGraph:
    # Ties must break toward the smaller point ID, while the local search
    # breaks toward the smaller local index; feed the tree id-sorted points
    # so the two orders agree.
    n = len(ids)
    if all(ids[k] < ids[k + 1] for k in range(n - 1)):
        ordered_ids = list(ids)
    else:
        by_id = sorted(range(n), key=lambda k: ids[k])
        sel = np.asarray(by_id)
        xs = xs[sel]
        ys = ys[sel]
        ordered_ids = [ids[k] for k in by_id]
    tree = build_compressed_quadtree(xs, ys, bits)
    pos_of = [0] * n
    for pos, j in enumerate(tree.order):
        pos_of[j] = pos
    nn_local = _nn_local(tree, pos_of)
    nn = {ordered_ids[k]: ordered_ids[nn_local[k]] for k in range(n)}
    return NngGraph(ids=list(ids), nn=nn)


def connected_components(g: NngGraph, s_membership) -> Components:
    """Union-find over the undirected edges {p, nn(p)}.

    s_membership: predicate over point ids.  For each component: has_s flag
    and, when no member is in S, the smallest member id (the insertion-order
    first point).
    """
    ids = g.ids
    n = len(ids)
    local = {pid: k for k, pid in enumerate(ids)}
    uf = UnionFind(n)
    for p, q in g.nn.items():
        uf.union(local[p], local[q])
    groups: dict[int, list[int]] = {}
    for pid in ids:
        root = uf.find(local[pid])
        groups.setdefault(root, []).append(pid)
    comps = []
    for root in sorted(groups, key=lambda r: min(groups[r])):
        members = sorted(groups[root])
        has_s = any(s_membership(pid) for pid in members)
        first_t = None
        if not has_s:
            first_t = members[0]
        comps.append(Component(members=members, has_s=has_s, first_t=first_t))
    return Components(components=comps)


@dataclass(frozen=True)
class SpreadEstimate:
    """Diagnostic spread: exact min pairwise distance over an approximate
    diameter (the bounding-box diagonal, which overestimates by <= sqrt(2))."""

    value: float
    min_distance: float
    bbox_diagonal: float
    diameter_overestimate_factor: float = math.sqrt(2.0)


def compute_spread(points) -> SpreadEstimate:
    n = len(points)
    if n < 2:
        raise ValueError("spread needs at least 2 points")
    g = nearest_neighbor_graph(points)
    min_d2 = math.inf
    for p, q in g.nn.items():
        dx = points[p][0] - points[q][0]
        dy = points[p][1] - points[q][1]
        d2 = dx * dx + dy * dy
        if d2 < min_d2:
            min_d2 = d2
    if min_d2 == 0.0:
        raise ValueError("duplicate points give zero minimum distance")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    diag = math.hypot(max(xs) - min(xs), max(ys) - min(ys))
    min_d = math.sqrt(min_d2)
    return SpreadEstimate(value=diag / min_d, min_distance=min_d, bbox_diagonal=diag)
