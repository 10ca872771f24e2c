"""Planar Delaunay triangulation with a persistent history DAG.

The triangle store is append-only: every triangle ever created stays in the
parallel arrays with its creation/death timestamps (counts of inserted
points) and, once dead, links to the triangles that replaced it.  Alive
triangles tile the whole plane: finite ones cover the convex hull and
symbolic "infinite" triangles (third vertex INF_ID) fan around it, one per
hull edge.

Conventions
-----------
* Finite triangles are stored counterclockwise.
* An infinite triangle is stored as (u, v, INF_ID) where (u, v) is the hull
  edge directed so that the exterior lies to the LEFT of u->v; a point p
  conflicts with it iff orient2d(u, v, p) >= 0.
* Neighbor slot i holds the triangle across the edge opposite vertex i.
* A point conflicts with a finite triangle iff it lies strictly inside the
  circumcircle (in_circle ZERO is never a conflict, which fixes one
  consistent triangulation of cocircular inputs).

Insertion splits the containing triangle and restores the empty-circle
property with Lawson flips.  Each dead triangle's children are the new
triangles created by the event that killed it (3 for a split, 2 for a flip),
which keeps the history fanout constant and makes the children exactly cover
their parent's closed region - the property point location descends on.
(Circumdisks shrink under flips, so descending by conflict instead of by
containment can strand a query; location tests containment for finite nodes
and the on-or-beyond half-plane for hull wedges, with a bounded hull march
as the fallback when a dead wedge loses track of an exterior point.)  Flip
intermediates created and killed by the same insertion carry
created == died and are never alive.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass

from .geometry import (
    POSITIVE,
    ZERO,
    in_circle_xy,
    orient2d_xy,
)

INF_ID = -1
_ALIVE = 1 << 62

class CollinearInputError(ValueError):
    """All candidate bootstrap points are collinear."""


class DuplicatePointError(ValueError):
    """Inserted point coincides with an existing vertex."""


class OpCounters:
    """Running tallies of the work the triangulation performs."""

    __slots__ = (
        "conflict_tests",
        "history_visits",
        "walk_steps",
        "walked_points",
        "cavity_triangles",
        "inserts",
    )

    def __init__(self):
        self.conflict_tests = 0
        self.history_visits = 0
        self.walk_steps = 0
        self.walked_points = 0
        self.cavity_triangles = 0
        self.inserts = 0

    def as_dict(self):
        return {name: getattr(self, name) for name in self.__slots__}


@dataclass(frozen=True)
class Snapshot:
    """The triangulation frozen at a round boundary: its alive triangles,
    their adjacency at that time, and one incident triangle per vertex."""

    round_index: int
    time: int
    alive: list[int]
    neighbors: dict[int, tuple[int, int, int]]
    incident: dict[int, int]

    def size(self) -> int:
        return len(self.alive)


# Containment classification tags used by the conflict-to-containing search.
INSIDE = 0
ON_EDGE = 1
INFINITE = 2


class _LiveNeighbors:
    __slots__ = ("tri",)

    def __init__(self, tri):
        self.tri = tri

    def __getitem__(self, t):
        tri = self.tri
        return tri.n0[t], tri.n1[t], tri.n2[t]


class _LiveIncident:
    __slots__ = ("tri",)

    def __init__(self, tri):
        self.tri = tri

    def __getitem__(self, v):
        tri = self.tri
        w = tri.live_wedge
        if v == INF_ID or v == tri.v0[w] or v == tri.v1[w]:
            return w
        for t in tri.live:
            if v in (tri.v0[t], tri.v1[t], tri.v2[t]):
                return t
        raise KeyError(v)


class _LiveView:
    """Duck-typed Snapshot over the current alive adjacency."""

    __slots__ = ("tri", "neighbors", "incident")

    def __init__(self, tri):
        self.tri = tri
        self.neighbors = _LiveNeighbors(tri)
        self.incident = _LiveIncident(tri)

    @property
    def alive(self):
        return self.tri.live


class Triangulation:
    """Append-only triangle store over a fixed insertion-ordered point list."""

    __slots__ = (
        "px", "py", "n_points",
        "v0", "v1", "v2",
        "n0", "n1", "n2",
        "created", "died",
        "chs", "chn", "chbuf",
        "roots", "live", "clock", "live_wedge",
        "n_finite_alive", "n_infinite_alive",
        "snapshots", "counters",
    )

    def __init__(self, points):
        self.px = array("d", (p[0] for p in points))
        self.py = array("d", (p[1] for p in points))
        self.n_points = len(points)
        self.v0 = array("q")
        self.v1 = array("q")
        self.v2 = array("q")
        self.n0 = array("q")
        self.n1 = array("q")
        self.n2 = array("q")
        self.created = array("q")
        self.died = array("q")
        self.chs = array("q")
        self.chn = array("q")
        self.chbuf = array("q")
        self.roots: list[int] = []
        self.live: set[int] = set()
        self.live_wedge = -1
        self.clock = 0
        self.n_finite_alive = 0
        self.n_infinite_alive = 0
        self.snapshots: dict[int, Snapshot] = {}
        self.counters = OpCounters()

    # -- construction helpers ------------------------------------------------

    def _new_tri(self, a: int, b: int, c: int, when: int) -> int:
        t = len(self.v0)
        self.v0.append(a)
        self.v1.append(b)
        self.v2.append(c)
        self.n0.append(-1)
        self.n1.append(-1)
        self.n2.append(-1)
        self.created.append(when)
        self.died.append(_ALIVE)
        self.chs.append(-1)
        self.chn.append(0)
        if c == INF_ID:
            self.n_infinite_alive += 1
        else:
            self.n_finite_alive += 1
        self.live.add(t)
        return t

    def _kill(self, t: int, children: list[int], when: int) -> None:
        if self.chn[t]:
            raise AssertionError("triangle killed twice")
        self.died[t] = when
        self.chs[t] = len(self.chbuf)
        self.chn[t] = len(children)
        self.chbuf.extend(children)
        self.live.discard(t)
        if self.v2[t] == INF_ID:
            self.n_infinite_alive -= 1
            if t == self.live_wedge:
                for ch in children:
                    if self.v2[ch] == INF_ID:
                        self.live_wedge = ch
                        break
        else:
            self.n_finite_alive -= 1
        if self.created[t] < when:
            self.counters.cavity_triangles += 1

    def _set_neighbors(self, t: int, a: int, b: int, c: int) -> None:
        self.n0[t] = a
        self.n1[t] = b
        self.n2[t] = c

    def _replace_neighbor(self, t: int, old: int, new: int) -> None:
        if self.n0[t] == old:
            self.n0[t] = new
        elif self.n1[t] == old:
            self.n1[t] = new
        elif self.n2[t] == old:
            self.n2[t] = new
        else:
            raise AssertionError("neighbor link not found")

    def _neighbor(self, t: int, slot: int) -> int:
        if slot == 0:
            return self.n0[t]
        if slot == 1:
            return self.n1[t]
        return self.n2[t]

    def _slot_of_neighbor(self, t: int, nb: int) -> int:
        if self.n0[t] == nb:
            return 0
        if self.n1[t] == nb:
            return 1
        if self.n2[t] == nb:
            return 2
        raise AssertionError("not adjacent")

    def _vertices(self, t: int) -> tuple[int, int, int]:
        return self.v0[t], self.v1[t], self.v2[t]

    def _vertex(self, t: int, slot: int) -> int:
        if slot == 0:
            return self.v0[t]
        if slot == 1:
            return self.v1[t]
        return self.v2[t]

    def _slot_of_vertex(self, t: int, v: int) -> int:
        if self.v0[t] == v:
            return 0
        if self.v1[t] == v:
            return 1
        if self.v2[t] == v:
            return 2
        raise AssertionError("vertex not in triangle")

    # -- predicates ----------------------------------------------------------

    def conflict(self, t: int, x: float, y: float) -> bool:
        """Exact conflict test of point (x, y) against triangle t.

        Finite: strictly inside the circumcircle (ZERO is never a conflict).
        Infinite: on or beyond the hull edge.
        """
        self.counters.conflict_tests += 1
        c = self.v2[t]
        px = self.px
        py = self.py
        a = self.v0[t]
        b = self.v1[t]
        if c == INF_ID:
            return orient2d_xy(px[a], py[a], px[b], py[b], x, y) >= 0
        return (
            in_circle_xy(px[a], py[a], px[b], py[b], px[c], py[c], x, y)
            == POSITIVE
        )

    # -- bootstrap -----------------------------------------------------------

    def _bootstrap_triple(self) -> None:
        # Points 0, 1, 2 of the (already reordered) insertion sequence are
        # the first non-collinear triple.
        px = self.px
        py = self.py
        s = orient2d_xy(px[0], py[0], px[1], py[1], px[2], py[2])
        if s == ZERO:
            raise AssertionError("bootstrap triple is collinear")
        if s == POSITIVE:
            a, b, c = 0, 1, 2
        else:
            a, b, c = 0, 2, 1
        t = self._new_tri(a, b, c, 3)
        iab = self._new_tri(b, a, INF_ID, 3)
        ibc = self._new_tri(c, b, INF_ID, 3)
        ica = self._new_tri(a, c, INF_ID, 3)
        self._set_neighbors(t, ibc, ica, iab)
        self._set_neighbors(iab, ica, ibc, t)
        self._set_neighbors(ibc, iab, ica, t)
        self._set_neighbors(ica, ibc, iab, t)
        self.roots = [t, iab, ibc, ica]
        self.live_wedge = iab
        self.clock = 3
        self._check_euler()

    # -- history descent -----------------------------------------------------

    def _test(self, t: int, x: float, y: float) -> bool:
        """Location test steering the history descent: closed containment for
        finite triangles, the on-or-beyond half-plane for exterior wedges."""
        px = self.px
        py = self.py
        a = self.v0[t]
        b = self.v1[t]
        c = self.v2[t]
        ax = px[a]
        ay = py[a]
        bx = px[b]
        by = py[b]
        if c == INF_ID:
            return orient2d_xy(ax, ay, bx, by, x, y) >= 0
        if orient2d_xy(ax, ay, bx, by, x, y) < 0:
            return False
        cx = px[c]
        cy = py[c]
        if orient2d_xy(bx, by, cx, cy, x, y) < 0:
            return False
        return orient2d_xy(cx, cy, ax, ay, x, y) >= 0

    def _descend(self, t: int, x: float, y: float, tau: int, snap=None) -> int:
        """Walk child links from a node whose location test holds for (x, y)
        down to a tau-alive triangle whose test holds.

        Finite children exactly cover a dead finite node's closed region, so
        the descent cannot stall while it stays finite.  Exterior wedges only
        carry a half-plane test; when a dead wedge has no matching child the
        point's wedge moved elsewhere along the hull, and the descent falls
        back to a bounded march over the tau-alive hull (snap supplies the
        adjacency for past times, None means now).
        """
        died = self.died
        chs = self.chs
        chn = self.chn
        chbuf = self.chbuf
        counters = self.counters
        counters.history_visits += 1
        while died[t] <= tau:
            lo = chs[t]
            nxt = -1
            for i in range(lo, lo + chn[t]):
                ch = chbuf[i]
                if self._test(ch, x, y):
                    nxt = ch
                    break
            if nxt < 0:
                if self.v2[t] != INF_ID:
                    raise AssertionError(
                        "containment descent stalled at a finite node"
                    )
                return self._locate_exterior(x, y, tau, snap)
            t = nxt
            counters.history_visits += 1
        return t

    def _locate_exterior(self, x: float, y: float, tau: int, snap):
        """Fallback location at time tau for a point whose exterior wedge was
        lost track of: scan the tau-hull for an on-or-beyond wedge; if none,
        the hull grew over the point and a walk from a hull vertex finds its
        containing triangle."""
        px = self.px
        py = self.py
        view = snap if snap is not None else _LiveView(self)
        entry = view.incident[INF_ID]
        t = entry
        counters = self.counters
        while True:
            counters.history_visits += 1
            a = self.v0[t]
            b = self.v1[t]
            if orient2d_xy(px[a], py[a], px[b], py[b], x, y) >= 0:
                return t
            t = view.neighbors[t][1]  # next wedge around the hull
            if t == entry:
                break
        # Strictly interior: locate by walking from a hull vertex.
        v = self.v0[entry]
        tri, _ = self.walk_locate(view, ("vertex", v), x, y)
        return tri

    def history_locate_conflict(
        self, x: float, y: float, start: int, target_time: int, snap=None
    ) -> int:
        """Descend from `start` (which must conflict with the point) to a
        triangle in conflict at target_time.

        The descent itself steers by the location test; a start that
        conflicts without passing it degrades to a fresh descent from the
        roots, which preserves the contract at the cost of the hint.
        """
        if self.created[start] > target_time:
            raise ValueError("start triangle did not exist at target time")
        if not self.conflict(start, x, y):
            raise ValueError("start triangle does not conflict with the point")
        if not self._test(start, x, y):
            start = self._root_start(x, y)
        return self._descend(start, x, y, target_time, snap)

    def _root_start(self, x: float, y: float) -> int:
        for r in self.roots:
            if self._test(r, x, y):
                return r
        raise AssertionError("no root covers the point")

    # -- conflict region to containing triangle -------------------------------

    def _containing_from_conflict(self, x, y, t, neighbors=None):
        """BFS over conflicting triangles until one contains (x, y).

        `neighbors` is None for the live adjacency or a snapshot's neighbor
        map for a past time.  Returns (kind, triangle, slot): INSIDE with
        slot -1, ON_EDGE with the slot opposite the touched edge, or
        INFINITE for a strictly-containing exterior wedge.
        """
        px = self.px
        py = self.py
        v0 = self.v0
        v1 = self.v1
        v2 = self.v2
        queue = [t]
        seen = {t}
        qi = 0
        while qi < len(queue):
            cur = queue[qi]
            qi += 1
            c = v2[cur]
            if c == INF_ID:
                a = v0[cur]
                b = v1[cur]
                if orient2d_xy(px[a], py[a], px[b], py[b], x, y) == POSITIVE:
                    return INFINITE, cur, -1
            else:
                a = v0[cur]
                b = v1[cur]
                ax = px[a]
                ay = py[a]
                bx = px[b]
                by = py[b]
                cx = px[c]
                cy = py[c]
                s01 = orient2d_xy(ax, ay, bx, by, x, y)
                if s01 >= 0:
                    s12 = orient2d_xy(bx, by, cx, cy, x, y)
                    if s12 >= 0:
                        s20 = orient2d_xy(cx, cy, ax, ay, x, y)
                        if s20 >= 0:
                            zeros = (s01 == 0) + (s12 == 0) + (s20 == 0)
                            if zeros == 0:
                                return INSIDE, cur, -1
                            if zeros >= 2:
                                raise DuplicatePointError(
                                    "point coincides with an existing vertex"
                                )
                            if s01 == 0:
                                slot = 2
                            elif s12 == 0:
                                slot = 0
                            else:
                                slot = 1
                            # On an edge both incident triangles contain the
                            # point; resolve to the lower index when the
                            # neighbor is finite.
                            if neighbors is None:
                                nb = self._neighbor(cur, slot)
                            else:
                                nb = neighbors[cur][slot]
                            if nb < cur and v2[nb] != INF_ID:
                                return ON_EDGE, nb, self._slot_of_neighbor(nb, cur)
                            return ON_EDGE, cur, slot
            if neighbors is None:
                nbs = (self.n0[cur], self.n1[cur], self.n2[cur])
            else:
                nbs = neighbors[cur]
            for nb in nbs:
                if nb not in seen and self.conflict(nb, x, y):
                    seen.add(nb)
                    queue.append(nb)
        raise AssertionError("conflict region contains no containing triangle")

    def conflict_to_containing(self, x, y, t, snap: Snapshot | None = None):
        """Local search from a conflicting triangle to the one containing
        (x, y): breadth-first over conflicting triangles only, classifying
        each finite one exactly.  On-edge hits resolve to the lower-index
        incident triangle; exterior points resolve to the strictly
        containing wedge.  `snap` supplies past-time adjacency (None: now).

        Returns (kind, triangle, slot) with kind INSIDE / ON_EDGE / INFINITE.
        """
        neighbors = snap.neighbors if snap is not None else None
        return self._containing_from_conflict(x, y, t, neighbors)

    def locate_in_snapshot(self, x: float, y: float, start: int, snap: Snapshot) -> int:
        """Descend the history from `start` to snapshot time, then locally
        search the snapshot's conflict region for the containing triangle
        (an exterior wedge for points outside the snapshot hull)."""
        if not self._test(start, x, y):
            start = self._root_start(x, y)
        t = self._descend(start, x, y, snap.time, snap)
        _, tri, _ = self._containing_from_conflict(x, y, t, snap.neighbors)
        return tri

    # -- insertion -----------------------------------------------------------

    def insert(self, pid: int, hint: int | None = None) -> None:
        """Insert point `pid`; `hint` must conflict with it (any time)."""
        x = self.px[pid]
        y = self.py[pid]
        if hint is None:
            start = self._root_start(x, y)
        else:
            if not self.conflict(hint, x, y):
                raise ValueError("insertion hint does not conflict with the point")
            start = hint if self._test(hint, x, y) else self._root_start(x, y)
        t = self._descend(start, x, y, self.clock)
        kind, tri, slot = self._containing_from_conflict(x, y, t)
        when = self.clock + 1
        if kind == INSIDE:
            stack = self._split_inside(tri, pid, when)
        elif kind == ON_EDGE:
            stack = self._split_edge(tri, slot, pid, when)
        else:
            stack = self._split_infinite(tri, pid, when)
        self._legalize(pid, x, y, stack, when)
        self.clock = when
        self.counters.inserts += 1
        self._check_euler()

    def _check_euler(self) -> None:
        n = self.clock
        if n >= 3:
            h = self.n_infinite_alive
            if self.n_finite_alive != 2 * n - 2 - h:
                raise AssertionError(
                    f"Euler violation at n={n}: {self.n_finite_alive} finite alive, "
                    f"{h} hull vertices"
                )

    def _split_inside(self, t, pid, when):
        a, b, c = self._vertices(t)
        na, nb_, nc = self.n0[t], self.n1[t], self.n2[t]
        t0 = self._new_tri(pid, b, c, when)
        t1 = self._new_tri(pid, c, a, when)
        t2 = self._new_tri(pid, a, b, when)
        self._set_neighbors(t0, na, t1, t2)
        self._set_neighbors(t1, nb_, t2, t0)
        self._set_neighbors(t2, nc, t0, t1)
        self._replace_neighbor(na, t, t0)
        self._replace_neighbor(nb_, t, t1)
        self._replace_neighbor(nc, t, t2)
        self._kill(t, [t0, t1, t2], when)
        return [(t0, 0), (t1, 0), (t2, 0)]

    def _split_infinite(self, t, pid, when):
        # t = (a, b, INF) and the point lies strictly beyond the hull edge.
        a, b = self.v0[t], self.v1[t]
        na, nb_, nc = self.n0[t], self.n1[t], self.n2[t]
        f = self._new_tri(pid, a, b, when)
        ib = self._new_tri(pid, b, INF_ID, when)
        ia = self._new_tri(a, pid, INF_ID, when)
        self._set_neighbors(f, nc, ib, ia)
        self._set_neighbors(ib, na, ia, f)
        self._set_neighbors(ia, ib, nb_, f)
        self._replace_neighbor(nc, t, f)
        self._replace_neighbor(na, t, ib)
        self._replace_neighbor(nb_, t, ia)
        self._kill(t, [f, ib, ia], when)
        return [(f, 0), (ib, 0), (ia, 1)]

    def _split_edge(self, t, slot, pid, when):
        # Point on the edge opposite `slot` of finite t; kill t and the
        # neighbor across, star the point to the four boundary edges.
        m = self._vertex(t, slot)
        u = self._vertex(t, (slot + 1) % 3)
        w = self._vertex(t, (slot + 2) % 3)
        nw = self._neighbor(t, (slot + 1) % 3)
        nu = self._neighbor(t, (slot + 2) % 3)
        nb = self._neighbor(t, slot)
        a1 = self._new_tri(pid, w, m, when)
        a2 = self._new_tri(pid, m, u, when)
        self._set_neighbors(a1, nw, a2, -1)
        self._set_neighbors(a2, nu, -1, a1)
        self._replace_neighbor(nw, t, a1)
        self._replace_neighbor(nu, t, a2)
        self._kill(t, [a1, a2], when)
        stack = [(a1, 0), (a2, 0)]
        if self.v2[nb] == INF_ID:
            # Hull edge: the outer side is an exterior wedge (w, u, INF).
            nba = self.n0[nb]
            nbb = self.n1[nb]
            b1 = self._new_tri(pid, u, INF_ID, when)
            b2 = self._new_tri(w, pid, INF_ID, when)
            self._set_neighbors(b1, nba, b2, a2)
            self._set_neighbors(b2, b1, nbb, a1)
            self.n2[a1] = b2
            self.n1[a2] = b1
            self._replace_neighbor(nba, nb, b1)
            self._replace_neighbor(nbb, nb, b2)
            self._kill(nb, [b1, b2], when)
            stack.append((b1, 0))
            stack.append((b2, 1))
        else:
            s2 = self._slot_of_neighbor(nb, t)
            m2 = self._vertex(nb, s2)
            e1 = self._vertex(nb, (s2 + 1) % 3)  # == w
            e2 = self._vertex(nb, (s2 + 2) % 3)  # == u
            n_e1 = self._neighbor(nb, (s2 + 1) % 3)
            n_e2 = self._neighbor(nb, (s2 + 2) % 3)
            b1 = self._new_tri(pid, e2, m2, when)
            b2 = self._new_tri(pid, m2, e1, when)
            self._set_neighbors(b1, n_e1, b2, a2)
            self._set_neighbors(b2, n_e2, a1, b1)
            self.n2[a1] = b2
            self.n1[a2] = b1
            self._replace_neighbor(n_e1, nb, b1)
            self._replace_neighbor(n_e2, nb, b2)
            self._kill(nb, [b1, b2], when)
            stack.append((b1, 0))
            stack.append((b2, 0))
        return stack

    def _legalize(self, pid, x, y, stack, when):
        px = self.px
        py = self.py
        v0 = self.v0
        v1 = self.v1
        v2 = self.v2
        n0 = self.n0
        n1 = self.n1
        n2 = self.n2
        died = self.died
        new_tri = self._new_tri
        kill = self._kill
        replace = self._replace_neighbor
        conflict = self.conflict
        while stack:
            t, s = stack.pop()
            if died[t] != _ALIVE:
                continue
            nb = n0[t] if s == 0 else (n1[t] if s == 1 else n2[t])
            if v2[t] == INF_ID:
                # Exterior wedge adjacent to another wedge across (vertex, INF):
                # flip exactly when the point lies strictly beyond the
                # neighbor's hull edge too (ZERO keeps collinear hull chains).
                h0 = v0[nb]
                h1 = v1[nb]
                if (
                    orient2d_xy(px[h0], py[h0], px[h1], py[h1], x, y)
                    != POSITIVE
                ):
                    continue
                if s == 0:
                    # t = (p, b, INF), nb = (b, c, INF) -> finite (p, b, c)
                    # plus wedge (p, c, INF).
                    b = v1[t]
                    c = v1[nb]
                    yf = new_tri(pid, b, c, when)
                    yi = new_tri(pid, c, INF_ID, when)
                    self._set_neighbors(yf, n2[nb], yi, n2[t])
                    self._set_neighbors(yi, n0[nb], n1[t], yf)
                    replace(n2[nb], nb, yf)
                    replace(n2[t], t, yf)
                    replace(n0[nb], nb, yi)
                    replace(n1[t], t, yi)
                    kill(t, [yf, yi], when)
                    kill(nb, [yf, yi], when)
                    stack.append((yf, 0))
                    stack.append((yi, 0))
                else:
                    # t = (a, p, INF), nb = (d, a, INF) -> finite (p, d, a)
                    # plus wedge (d, p, INF).
                    a = v0[t]
                    d = v0[nb]
                    yf = new_tri(pid, d, a, when)
                    yi = new_tri(d, pid, INF_ID, when)
                    self._set_neighbors(yf, n2[nb], n2[t], yi)
                    self._set_neighbors(yi, n0[t], n1[nb], yf)
                    replace(n2[nb], nb, yf)
                    replace(n2[t], t, yf)
                    replace(n0[t], t, yi)
                    replace(n1[nb], nb, yi)
                    kill(t, [yf, yi], when)
                    kill(nb, [yf, yi], when)
                    stack.append((yf, 0))
                    stack.append((yi, 1))
                continue
            if v2[nb] == INF_ID:
                # A CCW finite triangle never conflicts with the wedge beyond
                # its own far edge.
                continue
            if not conflict(nb, x, y):
                continue
            # Finite-finite flip: t = (p, u, v), nb across (u, v) with apex z.
            u = v1[t]
            v = v2[t]
            if n0[nb] == t:
                s2 = 0
            elif n1[nb] == t:
                s2 = 1
            else:
                s2 = 2
            z = v0[nb] if s2 == 0 else (v1[nb] if s2 == 1 else v2[nb])
            i1 = (s2 + 1) % 3
            i2 = (s2 + 2) % 3
            n_uz = n0[nb] if i1 == 0 else (n1[nb] if i1 == 1 else n2[nb])
            n_zv = n0[nb] if i2 == 0 else (n1[nb] if i2 == 1 else n2[nb])
            y1 = new_tri(pid, u, z, when)
            y2 = new_tri(pid, z, v, when)
            self._set_neighbors(y1, n_uz, y2, n2[t])
            self._set_neighbors(y2, n_zv, n1[t], y1)
            replace(n_uz, nb, y1)
            replace(n_zv, nb, y2)
            replace(n2[t], t, y1)
            replace(n1[t], t, y2)
            kill(t, [y1, y2], when)
            kill(nb, [y1, y2], when)
            stack.append((y1, 0))
            stack.append((y2, 0))

    # -- snapshots -----------------------------------------------------------

    def take_snapshot(self, round_index: int) -> Snapshot:
        alive = sorted(self.live)
        neighbors = {}
        incident: dict[int, int] = {}
        n0 = self.n0
        n1 = self.n1
        n2 = self.n2
        v0 = self.v0
        v1 = self.v1
        v2 = self.v2
        for t in alive:
            neighbors[t] = (n0[t], n1[t], n2[t])
            for v in (v0[t], v1[t], v2[t]):
                if v not in incident:
                    incident[v] = t
        snap = Snapshot(round_index, self.clock, alive, neighbors, incident)
        self.snapshots[round_index] = snap
        return snap

    def alive_at(self, tau: int) -> list[int]:
        created = self.created
        died = self.died
        return [
            t for t in range(len(self.v0)) if created[t] <= tau < died[t]
        ]

    # -- straight walk -------------------------------------------------------

    def walk_locate(self, snap, anchor, qx, qy, crossed=None):
        """Locate (qx, qy) in a snapshot by walking from an already-located
        anchor: ("tri", index, sx, sy) or ("vertex", point_id).

        Returns (triangle, steps).  For targets outside the snapshot hull the
        result is the exterior wedge the walk leaves through.  When `crossed`
        is a list, every triangle whose interior the open segment strictly
        crosses is appended to it.
        """
        px = self.px
        py = self.py
        v2 = self.v2
        nbrs = snap.neighbors
        counters = self.counters
        if anchor[0] == "vertex":
            vid = anchor[1]
            sx = px[vid]
            sy = py[vid]
            t, steps, entry = self._walk_rotate(snap, vid, sx, sy, qx, qy)
            if entry is None:
                counters.walk_steps += steps
                counters.walked_points += 1
                return self._normalize_walk_result(snap, t, qx, qy), steps
            l, r = entry
        else:
            t = anchor[1]
            sx = anchor[2]
            sy = anchor[3]
            steps = 1
            if v2[t] == INF_ID:
                t, steps2, entry = self._walk_hull_march(snap, t, sx, sy, qx, qy)
                steps += steps2
                if entry is None:
                    counters.walk_steps += steps
                    counters.walked_points += 1
                    return self._normalize_walk_result(snap, t, qx, qy), steps
                l, r = entry
            else:
                got = self._walk_init(t, sx, sy, qx, qy)
                if got is None:
                    counters.walk_steps += steps
                    counters.walked_points += 1
                    return t, steps
                l, r = got
                if crossed is not None:
                    crossed.append(t)
        # Straight-walk loop.  Invariant: the segment from s to q leaves the
        # current triangle t through edge {l, r}, where orient(s,q,l) >= 0,
        # orient(s,q,r) < 0 and (r, l) is a CCW-directed edge of t.  Vertices
        # exactly on the ray always join the l side, which keeps pivots past
        # an on-segment vertex sweeping one way.
        guard = 4 * len(snap.alive) + 16
        while True:
            guard -= 1
            if guard < 0:
                raise AssertionError("straight walk failed to terminate")
            sigma = orient2d_xy(px[r], py[r], px[l], py[l], qx, qy)
            if sigma > 0:
                counters.walk_steps += steps
                counters.walked_points += 1
                return t, steps
            if sigma == 0 and self._walk_contains(t, qx, qy):
                counters.walk_steps += steps
                counters.walked_points += 1
                return t, steps
            # fall through: q is strictly beyond the exit edge
            third = self.v0[t] + self.v1[t] + self.v2[t] - l - r
            slot = self._slot_of_vertex(t, third)
            nxt = nbrs[t][slot]
            steps += 1
            if v2[nxt] == INF_ID:
                counters.walk_steps += steps
                counters.walked_points += 1
                return self._normalize_walk_result(snap, nxt, qx, qy), steps
            m = self.v0[nxt] + self.v1[nxt] + self.v2[nxt] - l - r
            om = orient2d_xy(sx, sy, qx, qy, px[m], py[m])
            if crossed is not None:
                ol = orient2d_xy(sx, sy, qx, qy, px[l], py[l])
                orr = orient2d_xy(sx, sy, qx, qy, px[r], py[r])
                if ol > 0 and orr < 0:
                    crossed.append(nxt)
            if om >= 0:
                l = m
            else:
                r = m
            t = nxt

    def _walk_contains(self, t, x, y):
        px = self.px
        py = self.py
        a, b, c = self._vertices(t)
        ax, ay = px[a], py[a]
        bx, by = px[b], py[b]
        cx, cy = px[c], py[c]
        return (
            orient2d_xy(ax, ay, bx, by, x, y) >= 0
            and orient2d_xy(bx, by, cx, cy, x, y) >= 0
            and orient2d_xy(cx, cy, ax, ay, x, y) >= 0
        )

    def _normalize_walk_result(self, snap, t, qx, qy):
        # A wedge result with the target exactly on the hull line defers to
        # the inner triangle when that actually contains the target.
        if self.v2[t] == INF_ID:
            a = self.v0[t]
            b = self.v1[t]
            px = self.px
            py = self.py
            if orient2d_xy(px[a], py[a], px[b], py[b], qx, qy) == 0:
                inner = snap.neighbors[t][2]
                if self._walk_contains(inner, qx, qy):
                    return inner
        return t

    def _walk_init(self, t, sx, sy, qx, qy):
        """Exit straddle (l, r) of the start triangle for the ray s -> q.

        Looks for a CCW-directed edge (A, B) with orient(s,q,A) < 0 and
        orient(s,q,B) >= 0; when the ray runs exactly along an edge the
        relaxed pattern orient(s,q,A) == 0 < orient(s,q,B) picks the forward
        pivot vertex instead.  Returns None when q lies in the closed start
        triangle and no exit is needed.
        """
        px = self.px
        py = self.py
        vs = self._vertices(t)
        os_ = [orient2d_xy(sx, sy, qx, qy, px[v], py[v]) for v in vs]
        fallback = None
        for i in range(3):
            a = os_[i]
            b = os_[(i + 1) % 3]
            if a < 0 <= b:
                return vs[(i + 1) % 3], vs[i]
            if a == 0 and b > 0 and fallback is None:
                fallback = (vs[(i + 1) % 3], vs[i])
        if fallback is not None:
            return fallback
        if self._walk_contains(t, qx, qy):
            return None
        raise AssertionError("straight walk found no exit from start triangle")

    def _walk_rotate(self, snap, vid, sx, sy, qx, qy):
        """Rotate around a located vertex to the triangle whose angular
        sector contains the direction to q.

        Returns (triangle, steps, entry): entry is None when the rotation
        already resolves the location (exterior wedge at the vertex or the
        segment ends inside the sector triangle), otherwise the (l, r)
        straddle pair for the straight walk out of the sector triangle.
        """
        px = self.px
        py = self.py
        t = snap.incident[vid]
        steps = 0
        guard = len(snap.alive) + 8
        while True:
            guard -= 1
            if guard < 0:
                raise AssertionError("vertex rotation failed to terminate")
            steps += 1
            if self.v2[t] == INF_ID and vid in (self.v0[t], self.v1[t]):
                h0 = self.v0[t]
                h1 = self.v1[t]
                if orient2d_xy(px[h0], py[h0], px[h1], py[h1], qx, qy) >= 0:
                    return t, steps, None
                i = self._slot_of_vertex(t, vid)
                t = snap.neighbors[t][(i + 1) % 3]
                continue
            i = self._slot_of_vertex(t, vid)
            a = self._vertex(t, (i + 1) % 3)
            b = self._vertex(t, (i + 2) % 3)
            o1 = orient2d_xy(sx, sy, px[a], py[a], qx, qy)
            o2 = orient2d_xy(sx, sy, px[b], py[b], qx, qy)
            if o1 > 0 and o2 <= 0:
                # Direction lies in the half-open sector [ray to a, ray to b):
                # q strictly right of v->a is excluded, on-ray v->b included.
                return t, steps, (b, a)
            t = snap.neighbors[t][(i + 1) % 3]

    def _walk_hull_march(self, snap, t, sx, sy, qx, qy):
        """Walk start at an exterior wedge: march along the hull to the wedge
        holding q, or to the hull edge where the segment enters the hull."""
        px = self.px
        py = self.py
        steps = 0
        guard = len(snap.alive) + 8
        while True:
            guard -= 1
            if guard < 0:
                raise AssertionError("hull march failed to terminate")
            steps += 1
            h0 = self.v0[t]
            h1 = self.v1[t]
            if orient2d_xy(px[h0], py[h0], px[h1], py[h1], qx, qy) >= 0:
                return t, steps, None
            o0 = orient2d_xy(sx, sy, qx, qy, px[h0], py[h0])
            o1 = orient2d_xy(sx, sy, qx, qy, px[h1], py[h1])
            if o1 >= 0 > o0:
                # The segment enters the hull through edge {h0, h1}; step into
                # the interior triangle and set up its exit straddle.
                inner = snap.neighbors[t][2]
                m = self.v0[inner] + self.v1[inner] + self.v2[inner] - h0 - h1
                om = orient2d_xy(sx, sy, qx, qy, px[m], py[m])
                if om >= 0:
                    entry = (m, h0)
                else:
                    entry = (h1, m)
                return inner, steps + 1, entry
            if o0 >= 0:
                t = snap.neighbors[t][1]
            else:
                t = snap.neighbors[t][0]

    # -- output --------------------------------------------------------------

    def triangles(self) -> list[tuple[int, int, int]]:
        """Canonicalized finite alive triangles: rotated so the smallest id
        leads (CCW preserved), sorted."""
        out = []
        v0 = self.v0
        v1 = self.v1
        v2 = self.v2
        for t in sorted(self.live):
            a, b, c = v0[t], v1[t], v2[t]
            if c == INF_ID:
                continue
            if a <= b and a <= c:
                out.append((a, b, c))
            elif b <= a and b <= c:
                out.append((b, c, a))
            else:
                out.append((c, a, b))
        out.sort()
        return out

    def hull_size(self) -> int:
        return self.n_infinite_alive


def bootstrap(points) -> tuple[Triangulation, list[int]]:
    """Build the initial triangulation from an insertion-ordered point list.

    The first non-collinear triple becomes the seed triangle; points skipped
    while hunting for it move directly after the triple and reach the
    triangulation through the normal insertion path, so insertion ids stay
    contiguous prefixes of the final order.  Returns the state (three points
    in, ids 3.. pending) plus the permutation mapping each insertion id to
    its position in the given sequence.
    """
    n = len(points)
    if n < 3:
        raise CollinearInputError("need at least 3 distinct points")
    p0, p1 = points[0], points[1]
    pivot = -1
    for i in range(2, n):
        if orient2d_xy(p0[0], p0[1], p1[0], p1[1], points[i][0], points[i][1]) != ZERO:
            pivot = i
            break
    if pivot < 0:
        raise CollinearInputError("all input points are collinear")
    order = [0, 1, pivot] + list(range(2, pivot)) + list(range(pivot + 1, n))
    tri = Triangulation([points[i] for i in order])
    tri._bootstrap_triple()
    return tri, order
