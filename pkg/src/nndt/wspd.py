"""Well-separated pair decomposition on the compressed quadtree.

Standard pair splitting: recurse on the side with the larger true-bbox
radius until the two clusters satisfy dist(box_a, box_b) >= s * max(r_a,
r_b), radius being half the box diagonal.  Every unordered pair of distinct
points ends up covered by exactly one emitted pair.

Leaves of the tree are buckets (all points sharing one quantized key).  A
bucket holding several points cannot be split along the grid, so the
recursion splits it by a coordinate median instead; pairs produced this way
reference the bucket node plus an explicit member subset.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quadtree import CompressedQuadtree


@dataclass(frozen=True)
class WspdPair:
    """One well-separated cluster pair.

    a_node/b_node index quadtree nodes; a_members/b_members are None when the
    cluster is the node's whole point range, or the explicit local point
    indices for within-bucket refinements.
    """

    a_node: int
    b_node: int
    a_members: tuple[int, ...] | None
    b_members: tuple[int, ...] | None
    separation: float


def pair_points(tree: CompressedQuadtree, pair: WspdPair):
    """Materialize the two member lists of a pair (local point indices)."""
    a = (
        list(pair.a_members)
        if pair.a_members is not None
        else tree.node_points(pair.a_node)
    )
    b = (
        list(pair.b_members)
        if pair.b_members is not None
        else tree.node_points(pair.b_node)
    )
    return a, b


# Cluster tuples during the recursion: (node, members-or-None, minx, miny,
# maxx, maxy, r2, size).


def _node_cluster(tree, node):
    minx = tree.bb_minx[node]
    miny = tree.bb_miny[node]
    maxx = tree.bb_maxx[node]
    maxy = tree.bb_maxy[node]
    dx = maxx - minx
    dy = maxy - miny
    r2 = (dx * dx + dy * dy) * 0.25
    size = tree.range_hi[node] - tree.range_lo[node]
    return (node, None, minx, miny, maxx, maxy, r2, size)


def _member_cluster(tree, node, members):
    xs = tree.xs
    ys = tree.ys
    minx = min(xs[m] for m in members)
    maxx = max(xs[m] for m in members)
    miny = min(ys[m] for m in members)
    maxy = max(ys[m] for m in members)
    dx = maxx - minx
    dy = maxy - miny
    r2 = (dx * dx + dy * dy) * 0.25
    return (node, members, minx, miny, maxx, maxy, r2, len(members))


def _split(tree, cluster):
    """Child clusters: quadtree children, or a median split inside a bucket."""
    node, members, minx, miny, maxx, maxy, _, size = cluster
    if members is None:
        ch = tree.children[node]
        if ch:
            return [_node_cluster(tree, c) for c in ch]
        if size <= 1:
            return []
        members = tuple(tree.node_points(node))
    elif size <= 1:
        return []
    xs = tree.xs
    ys = tree.ys
    if maxx - minx >= maxy - miny:
        ordered = sorted(members, key=lambda m: (xs[m], m))
    else:
        ordered = sorted(members, key=lambda m: (ys[m], m))
    half = len(ordered) // 2
    return [
        _member_cluster(tree, node, tuple(ordered[:half])),
        _member_cluster(tree, node, tuple(ordered[half:])),
    ]


def _box_dist2(a, b):
    dx = a[2] - b[4]  # a.minx - b.maxx
    if dx < 0.0:
        dx = b[2] - a[4]
        if dx < 0.0:
            dx = 0.0
    dy = a[3] - b[5]
    if dy < 0.0:
        dy = b[3] - a[5]
        if dy < 0.0:
            dy = 0.0
    return dx * dx + dy * dy


def compute_wspd(tree: CompressedQuadtree, s: float = 2.5) -> list[WspdPair]:
    """All well-separated pairs at separation s (> 2, as nearest-neighbor
    capture requires)."""
    if not s > 2.0:
        raise ValueError("separation parameter must exceed 2")
    s2 = s * s
    out: list[WspdPair] = []
    if tree.n_points() < 2:
        return out

    def pair_up(a, b):
        stack = [(a, b)]
        while stack:
            u, v = stack.pop()
            d2 = _box_dist2(u, v)
            rmax = u[6] if u[6] >= v[6] else v[6]
            if d2 >= s2 * rmax:
                if rmax == 0.0 and d2 == 0.0:
                    raise ValueError("duplicate points cannot be separated")
                out.append(
                    WspdPair(
                        a_node=u[0],
                        b_node=v[0],
                        a_members=u[1],
                        b_members=v[1],
                        separation=s,
                    )
                )
                continue
            if u[6] >= v[6]:
                for c in _split(tree, u):
                    stack.append((c, v))
            else:
                for c in _split(tree, v):
                    stack.append((u, c))

    todo = [_node_cluster(tree, tree.root)]
    while todo:
        cl = todo.pop()
        kids = _split(tree, cl)
        for i in range(len(kids)):
            for j in range(i + 1, len(kids)):
                pair_up(kids[i], kids[j])
        todo.extend(k for k in kids if k[7] > 1)
    return out
