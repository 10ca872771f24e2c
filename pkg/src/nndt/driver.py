"""End-to-end randomized incremental construction with nearest-neighbor-graph
point location.

The run splits the shuffled input into doubling rounds.  Round 1 inserts
through plain history descents.  Every later round first builds a cascade of
level sets: the round's points form the top level, and each level down
collects the first point of every nearest-neighbor-graph component (over the
level joined with the already-inserted prefix of matching size) that misses
the prefix.  Locations then ascend: the lowest level enters the first
snapshot from the history roots, every level above is walked component by
component from an already-located seed, and hinted history descents lift
each level into the next snapshot.  Finally the round's points are inserted
with their located triangles as hints.

Counters record, per round and phase, the work that keeps this near-linear:
nearest-neighbor build sizes, history node visits, walk steps and conflict
tests.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .geometry import IngestReport, Point, ingest_points
from .nng import Components, NngGraph, _nng_from_arrays, connected_components
from .quadtree import default_bits
from .triangulation import Triangulation, bootstrap

PHASES = ("nng-build", "history", "walk", "insert")


@dataclass(frozen=True)
class RoundPlan:
    """Doubling round sizes: |R_1| = min(c, N), |R_{i+1}| = 2|R_i|, with the
    remainder absorbed into the last round (|R_m| <= 2|R_{m-1}|)."""

    c: int
    n: int
    sizes: list[int]
    boundaries: list[int]  # cumulative |S_1| < ... < |S_m| = N

    @property
    def m(self) -> int:
        return len(self.sizes)


def plan_rounds(n: int, c: int) -> RoundPlan:
    if n < 1:
        raise ValueError("need at least one point")
    if c < 3:
        raise ValueError("base round size must be at least 3")
    m = 1
    while c * ((1 << m) - 1) < n:
        m += 1
    sizes = [c * (1 << i) for i in range(m - 1)]
    sizes.append(n - c * ((1 << (m - 1)) - 1))
    boundaries = []
    total = 0
    for s in sizes:
        total += s
        boundaries.append(total)
    return RoundPlan(c=c, n=n, sizes=sizes, boundaries=boundaries)


@dataclass
class LevelData:
    members: list[int]  # the level's point ids, ascending
    graph: NngGraph
    comps: Components


@dataclass
class LevelSets:
    round_index: int
    levels: dict[int, LevelData]  # per level: its graph over level + prefix
    tsets: dict[int, list[int]]  # promoted point ids per level
    exit_level: int  # cascade exit: 0, or the level that came up empty


@dataclass
class RoundRecord:
    round_index: int
    points: int
    nng_builds: list[tuple[int, int]] = field(default_factory=list)  # (level, size)
    t_sizes: list[tuple[int, int]] = field(default_factory=list)  # (level, level size)
    history: dict = field(default_factory=dict)
    walk: dict = field(default_factory=dict)
    insert: dict = field(default_factory=dict)
    wall_s: float = 0.0


@dataclass
class RunCounters:
    mode: str
    rounds: list[RoundRecord] = field(default_factory=list)

    def totals(self) -> dict:
        agg: dict[str, int] = {}
        for rec in self.rounds:
            for phase in (rec.history, rec.walk, rec.insert):
                for key, val in phase.items():
                    agg[key] = agg.get(key, 0) + val
        agg["nng_input_total"] = sum(
            sz for rec in self.rounds for _, sz in rec.nng_builds
        )
        agg["nng_builds"] = sum(len(rec.nng_builds) for rec in self.rounds)
        agg["points"] = sum(rec.points for rec in self.rounds)
        return agg

    def location_work(self) -> int:
        """History visits + walk steps + conflict tests over the whole run."""
        t = self.totals()
        return (
            t.get("history_visits", 0)
            + t.get("walk_steps", 0)
            + t.get("conflict_tests", 0)
        )

    def csv_rows(self) -> list[tuple]:
        rows = []
        for rec in self.rounds:
            rows.append((rec.round_index, "round", "points", rec.points))
            rows.append(
                (rec.round_index, "nng-build", "builds", len(rec.nng_builds))
            )
            for level, size in rec.nng_builds:
                rows.append(
                    (rec.round_index, "nng-build", f"level_{level}_input", size)
                )
            for level, size in rec.t_sizes:
                rows.append(
                    (rec.round_index, "nng-build", f"level_{level}_tset", size)
                )
            for phase_name, phase in (
                ("history", rec.history),
                ("walk", rec.walk),
                ("insert", rec.insert),
            ):
                for key in sorted(phase):
                    if phase[key]:
                        rows.append((rec.round_index, phase_name, key, phase[key]))
        return rows


@dataclass
class RunResult:
    points: list[Point]  # deduplicated, input order
    source_of: list[int]  # insertion id -> index into points
    triangles: list[tuple[int, int, int]]  # canonical, insertion-id space
    state: Triangulation
    plan: RoundPlan
    counters: RunCounters
    dedup: IngestReport
    seed: int | None = None

    def triangles_input_ids(self) -> list[tuple[int, int, int]]:
        """Triangles renamed to deduplicated-input-order ids, canonicalized."""
        src = self.source_of
        out = []
        for a, b, c in self.triangles:
            t = (src[a], src[b], src[c])
            if t[0] <= t[1] and t[0] <= t[2]:
                out.append(t)
            elif t[1] <= t[0] and t[1] <= t[2]:
                out.append((t[1], t[2], t[0]))
            else:
                out.append((t[2], t[0], t[1]))
        out.sort()
        return out


def _delta(after: dict, before: dict) -> dict:
    return {k: after[k] - before[k] for k in after if after[k] != before[k]}


def _merge(acc: dict, d: dict) -> None:
    for k, v in d.items():
        acc[k] = acc.get(k, 0) + v


def build_level_sets(
    k: int,
    plan: RoundPlan,
    xs: np.ndarray,
    ys: np.ndarray,
    rec: RoundRecord,
) -> LevelSets:
    """The shrinking level-set cascade for round k.

    The round's points form level k-1.  Walking levels downward, compute the
    nearest-neighbor graph of the level joined with the inserted prefix of
    matching size, and promote the first point of every component that has
    no prefix vertex into the next level, stopping at level 0 or at an empty
    level.  Each level holds at most half the one above.
    """
    boundaries = plan.boundaries
    tsets: dict[int, list[int]] = {
        k - 1: list(range(boundaries[k - 2], boundaries[k - 1]))
    }
    levels: dict[int, LevelData] = {}
    j = k - 1
    while tsets[j] and j > 0:
        sj = boundaries[j - 1]
        tj = tsets[j]
        members = list(range(sj)) + tj
        rec.nng_builds.append((j, len(members)))
        rec.t_sizes.append((j, len(tj)))
        sel = np.asarray(members)
        graph = _nng_from_arrays(
            xs[sel], ys[sel], members, default_bits(len(members))
        )
        comps = connected_components(graph, lambda pid, _s=sj: pid < _s)
        promoted = sorted(
            comp.first_t for comp in comps.components if not comp.has_s
        )
        if len(promoted) > len(tj) // 2:
            raise AssertionError(
                f"level halving violated at round {k} level {j}: "
                f"{len(promoted)} promoted from {len(tj)}"
            )
        levels[j] = LevelData(members=tj, graph=graph, comps=comps)
        tsets[j - 1] = promoted
        j -= 1
    return LevelSets(round_index=k, levels=levels, tsets=tsets, exit_level=j)


def _conflicts_point(tri: Triangulation, t: int, x: float, y: float) -> bool:
    # Invariant-check twin of Triangulation.conflict that leaves the work
    # counters untouched.
    from .geometry import POSITIVE, in_circle_xy, orient2d_xy
    from .triangulation import INF_ID

    a, b, c = tri.v0[t], tri.v1[t], tri.v2[t]
    px, py = tri.px, tri.py
    if c == INF_ID:
        return orient2d_xy(px[a], py[a], px[b], py[b], x, y) >= 0
    return in_circle_xy(
        px[a], py[a], px[b], py[b], px[c], py[c], x, y
    ) == POSITIVE


def locate_ascending(
    k: int,
    level_sets: LevelSets,
    tri: Triangulation,
    plan: RoundPlan,
    rec: RoundRecord,
    check_walks: bool = False,
) -> dict[int, int]:
    """Give every point of the round its containing triangle in the
    previous round's snapshot.

    Ascends from the cascade's exit level: a nonempty level 0 enters the
    first snapshot by descending the history from the roots; each level is
    then located in its own snapshot by walking its retained
    nearest-neighbor components from an already-located member (a snapshot
    vertex or a lifted lower-level point), and hinted history descents lift
    the level into the next snapshot.
    """
    boundaries = plan.boundaries
    px = tri.px
    py = tri.py
    counters = tri.counters
    loc: dict[int, int] = {}
    for j in range(level_sets.exit_level, k - 1):
        snap = tri.snapshots[j + 1]
        tj = level_sets.tsets.get(j, [])
        before = counters.as_dict()
        if tj:
            if j == 0:
                for p in tj:
                    x = px[p]
                    y = py[p]
                    start = tri._root_start(x, y)
                    t = tri._descend(start, x, y, snap.time, snap)
                    _, t2, _ = tri._containing_from_conflict(
                        x, y, t, snap.neighbors
                    )
                    loc[p] = t2
            else:
                for p in tj:
                    loc[p] = tri.locate_in_snapshot(px[p], py[p], loc[p], snap)
        _merge(rec.history, _delta(counters.as_dict(), before))

        level = level_sets.levels[j + 1]
        sj1 = boundaries[j]
        adj: dict[int, list[int]] = {}
        for p, q in level.graph.nn.items():
            adj.setdefault(p, []).append(q)
            adj.setdefault(q, []).append(p)
        before = counters.as_dict()
        for comp in level.comps.components:
            seed = -1
            for m in comp.members:  # ascending, so the first hit is minimal
                if m < sj1 or m in loc:
                    seed = m
                    break
            if seed < 0:
                raise AssertionError(
                    f"component without located seed at round {k} level {j + 1}"
                )
            stack = [seed]
            visited = {seed}
            while stack:
                u = stack.pop()
                for v in sorted(adj[u], reverse=True):
                    if v in visited:
                        continue
                    visited.add(v)
                    if v >= sj1 and v not in loc:
                        if u < sj1:
                            anchor = ("vertex", u)
                        else:
                            anchor = ("tri", loc[u], px[u], py[u])
                        if check_walks:
                            crossed: list[int] = []
                            loc[v], _ = tri.walk_locate(
                                snap, anchor, px[v], py[v], crossed
                            )
                            for ct in crossed:
                                if not (
                                    _conflicts_point(tri, ct, px[u], py[u])
                                    or _conflicts_point(tri, ct, px[v], py[v])
                                ):
                                    raise AssertionError(
                                        "walk crossed a triangle in conflict "
                                        "with neither endpoint"
                                    )
                        else:
                            loc[v], _ = tri.walk_locate(
                                snap, anchor, px[v], py[v]
                            )
                    stack.append(v)
        _merge(rec.walk, _delta(counters.as_dict(), before))
    return loc


def run_ordered(
    points, c: int = 32, mode: str = "nng", check_walks: bool = False
) -> RunResult:
    """Construct over an already-shuffled, deduplicated point sequence.

    check_walks additionally asserts, for every located point, that each
    triangle the walk strictly crosses conflicts with the walk source or
    target (slow; meant for tests).
    """
    if mode not in ("nng", "plain"):
        raise ValueError(f"unknown mode {mode!r}")
    n = len(points)
    plan = plan_rounds(n, c)
    tri, order = bootstrap(points)
    xs = np.frombuffer(tri.px, dtype=np.float64)
    ys = np.frombuffer(tri.py, dtype=np.float64)
    counters = RunCounters(mode=mode)
    boundaries = plan.boundaries

    rec = RoundRecord(round_index=1, points=boundaries[0])
    t0 = time.perf_counter()
    before = tri.counters.as_dict()
    for pid in range(3, boundaries[0]):
        tri.insert(pid)
    _merge(rec.insert, _delta(tri.counters.as_dict(), before))
    if mode == "nng":
        tri.take_snapshot(1)
    rec.wall_s = time.perf_counter() - t0
    counters.rounds.append(rec)

    for k in range(2, plan.m + 1):
        rec = RoundRecord(round_index=k, points=plan.sizes[k - 1])
        t0 = time.perf_counter()
        if mode == "nng":
            level_sets = build_level_sets(k, plan, xs, ys, rec)
            hints = locate_ascending(k, level_sets, tri, plan, rec, check_walks)
        else:
            hints = None
        before = tri.counters.as_dict()
        for pid in range(boundaries[k - 2], boundaries[k - 1]):
            tri.insert(pid, hints[pid] if hints is not None else None)
        _merge(rec.insert, _delta(tri.counters.as_dict(), before))
        if mode == "nng":
            tri.take_snapshot(k)
        rec.wall_s = time.perf_counter() - t0
        counters.rounds.append(rec)

    return RunResult(
        points=list(points),
        source_of=order,
        triangles=tri.triangles(),
        state=tri,
        plan=plan,
        counters=counters,
        dedup=IngestReport(kept=n, dropped=[]),
    )


def run(
    points, seed: int, c: int = 32, mode: str = "nng", check_walks: bool = False
) -> RunResult:
    """Deduplicate, shuffle by seed, and construct the Delaunay triangulation.

    Returns the triangulation (insertion-id and input-id views), the round
    plan and the per-round work counters.
    """
    clean, report = ingest_points(points)
    if len(clean) < 3:
        raise ValueError("need at least 3 distinct points")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(len(clean))
    shuffled = [clean[i] for i in perm]
    result = run_ordered(shuffled, c=c, mode=mode, check_walks=check_walks)
    # Compose the bootstrap reorder with the shuffle: insertion id -> index
    # in the deduplicated input.
    result.source_of = [int(perm[i]) for i in result.source_of]
    result.points = clean
    result.dedup = report
    result.seed = seed
    return result


@dataclass(frozen=True)
class CostProfileReport:
    passed: bool
    violations: list[str]


def validate_cost_profile(counters: RunCounters, plan: RoundPlan) -> CostProfileReport:
    """Check the measured nearest-neighbor-graph work against the designed
    cost structure: per round k at most k-1 builds, the build at level j
    over at most 2^{j+1} * c points (the top build of the final round over
    at most N), and every level at most half the one above."""
    violations = []
    c = plan.c
    for rec in counters.rounds:
        k = rec.round_index
        if k == 1:
            if rec.nng_builds:
                violations.append("round 1 ran an NNG build")
            continue
        if len(rec.nng_builds) > k - 1:
            violations.append(
                f"round {k}: {len(rec.nng_builds)} NNG builds exceeds k-1 = {k - 1}"
            )
        for level, size in rec.nng_builds:
            bound = (1 << (level + 1)) * c
            if k == plan.m and level == k - 1:
                bound = max(bound, plan.n)
            if size > bound:
                violations.append(
                    f"round {k} level {level}: NNG input {size} exceeds {bound}"
                )
        tsz = dict(rec.t_sizes)
        for level, size in rec.t_sizes:
            above = tsz.get(level + 1)
            if above is not None and level + 1 <= k - 2 and size > above // 2:
                violations.append(
                    f"round {k}: level {level} holds {size} points, over half "
                    f"of level {level + 1} ({above})"
                )
    return CostProfileReport(passed=not violations, violations=violations)
