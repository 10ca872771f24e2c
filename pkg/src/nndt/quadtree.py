"""Compressed quadtree over Morton-sorted quantized points.

The tree is built in one stack pass over the sorted key sequence: a leaf per
bucket of equal keys, and an internal node at every longest-common-prefix
boundary between adjacent buckets.  Single-child chains never materialize, so
the node count is at most 2 * buckets - 1.  Alongside each node's grid cell
the true-coordinate bounding box of its points is kept; all distance work
downstream uses the true boxes, so quantization resolution never affects
results, only tree shape.
"""

from __future__ import annotations

import math

import numpy as np

from .morton import morton_keys, radix_sort


class CompressedQuadtree:
    __slots__ = (
        "bits",
        "order",
        "xs",
        "ys",
        "level",
        "anchor_x",
        "anchor_y",
        "children",
        "range_lo",
        "range_hi",
        "bb_minx",
        "bb_miny",
        "bb_maxx",
        "bb_maxy",
        "root",
    )

    def __init__(self, bits: int):
        self.bits = bits
        self.order: list[int] = []
        self.xs: list[float] = []
        self.ys: list[float] = []
        self.level: list[int] = []
        self.anchor_x: list[int] = []
        self.anchor_y: list[int] = []
        self.children: list[list[int]] = []
        self.range_lo: list[int] = []
        self.range_hi: list[int] = []
        self.bb_minx: list[float] = []
        self.bb_miny: list[float] = []
        self.bb_maxx: list[float] = []
        self.bb_maxy: list[float] = []
        self.root = -1

    def n_nodes(self) -> int:
        return len(self.level)

    def n_points(self) -> int:
        return len(self.order)

    def is_leaf(self, node: int) -> bool:
        return not self.children[node]

    def node_points(self, node: int) -> list[int]:
        return self.order[self.range_lo[node]:self.range_hi[node]]


def default_bits(n: int) -> int:
    """ceil(log2 n) + 2, clamped to half a 64-bit word."""
    if n <= 1:
        return 1
    return min(32, max(1, math.ceil(math.log2(n)) + 2))


def quantize_arrays(xs: np.ndarray, ys: np.ndarray, bits: int):
    """Vectorized twin of geometry.quantize over coordinate arrays (one
    shared scale, so grid cells stay square in true space)."""
    cells = float(1 << bits)
    top = np.uint64((1 << bits) - 1)
    minx = xs.min()
    miny = ys.min()
    span = max(xs.max() - minx, ys.max() - miny)
    scale = cells / span if span > 0.0 else 0.0
    qx = np.minimum(np.floor((xs - minx) * scale).astype(np.uint64), top)
    qy = np.minimum(np.floor((ys - miny) * scale).astype(np.uint64), top)
    return qx, qy


def build_compressed_quadtree(xs, ys, bits: int | None = None) -> CompressedQuadtree:
    """Quantize, Morton-sort (radix) and build the compressed quadtree.

    xs, ys: true coordinates (array-like).  The build itself does no
    re-sorting: one pass over the sorted keys splitting at the
    longest-common-prefix depth of adjacent buckets.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    n = xs.size
    if n == 0:
        raise ValueError("cannot build a quadtree over no points")
    if bits is None:
        bits = default_bits(n)
    qx, qy = quantize_arrays(xs, ys, bits)
    keys = morton_keys(qx, qy)
    perm = radix_sort(keys, 2 * bits)
    skeys = keys[perm]

    tree = CompressedQuadtree(bits)
    tree.order = perm.tolist()
    tree.xs = xs.tolist()
    tree.ys = ys.tolist()
    key_list = skeys.tolist()
    qx_list = qx.tolist()
    qy_list = qy.tolist()

    level = tree.level
    anchor_x = tree.anchor_x
    anchor_y = tree.anchor_y
    children = tree.children
    range_lo = tree.range_lo
    range_hi = tree.range_hi

    def new_node(lvl: int, sample: int, lo: int, hi: int) -> int:
        idx = len(level)
        level.append(lvl)
        mask = ~((1 << lvl) - 1)
        p = tree.order[sample]
        anchor_x.append(qx_list[p] & mask)
        anchor_y.append(qy_list[p] & mask)
        children.append([])
        range_lo.append(lo)
        range_hi.append(hi)
        return idx

    # Bucket boundaries of equal keys in the sorted sequence.
    if n > 1:
        starts = [0] + (np.flatnonzero(skeys[1:] != skeys[:-1]) + 1).tolist() + [n]
    else:
        starts = [0, n]

    # Stack of (depth, node): the rightmost path, depth increasing upward.
    # Each non-top entry has the entry above it as its last child.
    two_bits = 2 * bits
    first = new_node(0, starts[0], starts[0], starts[1])
    stack = [(bits, first)]
    for bi in range(1, len(starts) - 1):
        lo = starts[bi]
        hi = starts[bi + 1]
        split_depth = (two_bits - (key_list[lo - 1] ^ key_list[lo]).bit_length()) >> 1
        last = -1
        while stack and stack[-1][0] > split_depth:
            last = stack.pop()[1]
        if stack and stack[-1][0] == split_depth:
            parent = stack[-1][1]
        else:
            parent = new_node(bits - split_depth, lo - 1, range_lo[last], hi)
            children[parent].append(last)
            if stack:
                below = stack[-1][1]
                ch = children[below]
                if ch and ch[-1] == last:
                    ch[-1] = parent
            stack.append((split_depth, parent))
        leaf = new_node(0, lo, lo, hi)
        children[parent].append(leaf)
        stack.append((bits, leaf))
    tree.root = stack[0][1]

    # Close ranges bottom-up and compute true bounding boxes.
    n_nodes = len(level)
    if n_nodes > 2 * len(starts) - 3:  # buckets = len(starts) - 1
        raise AssertionError("compressed quadtree exceeded 2n - 1 nodes")
    tree.bb_minx = [0.0] * n_nodes
    tree.bb_miny = [0.0] * n_nodes
    tree.bb_maxx = [0.0] * n_nodes
    tree.bb_maxy = [0.0] * n_nodes
    _finish(tree)
    return tree


def _finish(tree: CompressedQuadtree) -> None:
    # Iterative post-order: extend internal ranges over their children and
    # fold up the true bounding boxes.
    xs = tree.xs
    ys = tree.ys
    order = tree.order
    post = []
    stack = [tree.root]
    while stack:
        node = stack.pop()
        post.append(node)
        stack.extend(tree.children[node])
    bminx = tree.bb_minx
    bminy = tree.bb_miny
    bmaxx = tree.bb_maxx
    bmaxy = tree.bb_maxy
    range_lo = tree.range_lo
    range_hi = tree.range_hi
    for node in reversed(post):
        ch = tree.children[node]
        if not ch:
            lo = range_lo[node]
            hi = range_hi[node]
            p0 = order[lo]
            minx = maxx = xs[p0]
            miny = maxy = ys[p0]
            for i in range(lo + 1, hi):
                p = order[i]
                x = xs[p]
                y = ys[p]
                if x < minx:
                    minx = x
                elif x > maxx:
                    maxx = x
                if y < miny:
                    miny = y
                elif y > maxy:
                    maxy = y
        else:
            range_lo[node] = range_lo[ch[0]]
            range_hi[node] = range_hi[ch[-1]]
            c0 = ch[0]
            minx = bminx[c0]
            miny = bminy[c0]
            maxx = bmaxx[c0]
            maxy = bmaxy[c0]
            for c in ch[1:]:
                if bminx[c] < minx:
                    minx = bminx[c]
                if bminy[c] < miny:
                    miny = bminy[c]
                if bmaxx[c] > maxx:
                    maxx = bmaxx[c]
                if bmaxy[c] > maxy:
                    maxy = bmaxy[c]
        bminx[node] = minx
        bminy[node] = miny
        bmaxx[node] = maxx
        bmaxy[node] = maxy
