import math

import numpy as np
import pytest

from nndt.driver import (
    RoundRecord,
    RunCounters,
    build_level_sets,
    locate_ascending,
    plan_rounds,
    run,
    run_ordered,
    validate_cost_profile,
)
from nndt.geometry import ContainmentKind, point_in_triangle
from nndt.oracle import brute_delaunay_report, check_delaunay_property
from nndt.triangulation import INF_ID, CollinearInputError, bootstrap


class TestPlanRounds:
    def test_spec_example_100_4(self):
        p = plan_rounds(100, 4)
        assert p.sizes == [4, 8, 16, 32, 40]
        assert p.m == 5
        assert p.m == math.ceil(math.log2(100 / 4 + 1))

    def test_n_at_most_c_single_round(self):
        assert plan_rounds(5, 8).sizes == [5]
        assert plan_rounds(8, 8).sizes == [8]

    def test_12_4(self):
        assert plan_rounds(12, 4).sizes == [4, 8]

    def test_doubling_and_remainder_rule(self):
        for n, c in [(7, 3), (97, 3), (4096, 32), (100000, 32), (33, 4)]:
            p = plan_rounds(n, c)
            assert sum(p.sizes) == n
            assert p.sizes[0] == min(c, n)
            for i in range(1, p.m - 1):
                assert p.sizes[i] == 2 * p.sizes[i - 1]
            if p.m > 1:
                assert p.sizes[-1] <= 2 * p.sizes[-2]
            assert p.m == math.ceil(math.log2(n / c + 1))

    def test_boundaries_cumulative(self):
        p = plan_rounds(100, 4)
        assert p.boundaries == [4, 12, 28, 60, 100]

    def test_errors(self):
        with pytest.raises(ValueError):
            plan_rounds(0, 4)
        with pytest.raises(ValueError):
            plan_rounds(10, 2)


def _blob(rng, n, scale=1e-3, at=(0.0, 0.0)):
    pts = rng.random((n, 2)) * scale
    return [(float(x + at[0]), float(y + at[1])) for x, y in pts]


class TestLevelSetCascade:
    def test_deep_cascade_far_cluster(self):
        # 28 blob points fill rounds 1..3; round 4 is an isolated far cluster
        # of 8 points nested as pairs of pairs of pairs, so every level
        # promotes one representative per component all the way to T_0.
        rng = np.random.default_rng(0)
        blob = _blob(rng, 28)
        cluster = []
        for i3 in (0, 1):
            for i2 in (0, 1):
                for i1 in (0, 1):
                    # sub-pair jitter keeps the pair hierarchy but breaks
                    # the rectangle cocircularities
                    jx, jy = rng.random(2) * 1e-10
                    cluster.append(
                        (1000.0 + i3 * 1.0 + i1 * 1e-6 + float(jx),
                         1000.0 + i2 * 1e-3 + float(jy))
                    )
        res = run_ordered(blob + cluster, c=4)
        rec = res.counters.rounds[3]
        assert rec.t_sizes == [(3, 8), (2, 4), (1, 2)]
        assert len(rec.nng_builds) == 3
        tris, degenerate = brute_delaunay_report(res.points)
        assert not degenerate
        assert set(res.triangles_input_ids()) == tris

    def test_cascade_stops_when_all_components_touch_s(self):
        # Round 2 points hug their round-1 hosts: every component of
        # NNG(T_1 u S_1) contains an S_1 vertex, T_0 stays empty and R_2 is
        # located purely by walking from S_1 seeds (no history lifts).
        hosts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]
        sats = []
        for hx, hy in hosts:
            sats.append((hx + 1e-9, hy))
            sats.append((hx, hy + 1e-9))
        res = run_ordered(hosts + sats, c=4)
        rec = res.counters.rounds[1]
        assert rec.t_sizes == [(1, 8)]
        assert len(rec.nng_builds) == 1
        assert rec.history == {}  # nothing lifted through the history
        assert rec.walk.get("walked_points") == 8
        report = check_delaunay_property(
            res.points, res.triangles_input_ids()
        )
        assert report.passed

    def test_halving_invariant_recorded(self):
        rng = np.random.default_rng(1)
        pts = [tuple(p) for p in rng.random((300, 2))]
        res = run(pts, seed=3, c=4)
        for rec in res.counters.rounds:
            sizes = dict(rec.t_sizes)
            for level, size in rec.t_sizes:
                above = sizes.get(level + 1)
                if above is not None:
                    assert size <= above // 2


class TestLocateAscending:
    def test_hints_contain_or_conflict(self):
        rng = np.random.default_rng(2)
        pts = [tuple(p) for p in rng.random((60, 2))]
        # replicate the run loop up to the last round by hand
        plan = plan_rounds(60, 8)
        tri, order = bootstrap(pts)
        xs = np.array([tri.px[i] for i in range(60)])
        ys = np.array([tri.py[i] for i in range(60)])
        for pid in range(3, plan.boundaries[0]):
            tri.insert(pid)
        tri.take_snapshot(1)
        for k in range(2, plan.m + 1):
            rec = RoundRecord(round_index=k, points=plan.sizes[k - 1])
            level_sets = build_level_sets(k, plan, xs, ys, rec)
            hints = locate_ascending(k, level_sets, tri, plan, rec)
            snap = tri.snapshots[k - 1]
            for pid in range(plan.boundaries[k - 2], plan.boundaries[k - 1]):
                h = hints[pid]
                assert h in snap.alive
                p = (tri.px[pid], tri.py[pid])
                if tri.v2[h] == INF_ID:
                    assert tri.conflict(h, *p)
                else:
                    a, b, c = tri.v0[h], tri.v1[h], tri.v2[h]
                    where = point_in_triangle(
                        p,
                        (tri.px[a], tri.py[a]),
                        (tri.px[b], tri.py[b]),
                        (tri.px[c], tri.py[c]),
                    )
                    assert where.kind in (
                        ContainmentKind.INSIDE,
                        ContainmentKind.ON_EDGE,
                    )
                tri.insert(pid, hints[pid])
            tri.take_snapshot(k)


class TestRun:
    def test_matches_brute_and_plain(self):
        rng = np.random.default_rng(3)
        for seed in range(4):
            pts = [tuple(p) for p in rng.random((90, 2))]
            res = run(pts, seed=seed, c=4)
            plain = run(pts, seed=seed, c=4, mode="plain")
            tris, degenerate = brute_delaunay_report(res.points)
            assert not degenerate
            assert set(res.triangles_input_ids()) == tris
            assert res.triangles_input_ids() == plain.triangles_input_ids()

    def test_seed_independence_on_general_position(self):
        rng = np.random.default_rng(4)
        pts = [tuple(p) for p in rng.random((150, 2))]
        a = run(pts, seed=1, c=16).triangles_input_ids()
        b = run(pts, seed=999, c=16).triangles_input_ids()
        assert a == b

    def test_degenerate_grid_valid(self):
        g = [(float(i), float(j)) for i in range(9) for j in range(9)]
        res = run(g, seed=7, c=8, check_walks=True)
        report = check_delaunay_property(res.points, res.triangles_input_ids())
        assert report.passed, report.violations[:2]

    def test_clustered_far_apart(self):
        rng = np.random.default_rng(5)
        pts = _blob(rng, 50) + _blob(rng, 40, at=(500.0, -300.0)) + _blob(
            rng, 30, at=(-200.0, 800.0)
        )
        res = run(pts, seed=2, c=4, check_walks=True)
        plain = run(pts, seed=2, c=4, mode="plain")
        assert res.triangles_input_ids() == plain.triangles_input_ids()
        assert check_delaunay_property(
            res.points, res.triangles_input_ids()
        ).passed

    def test_duplicates_dropped_with_report(self):
        pts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 0.0), (0.25, 0.25)]
        res = run(pts, seed=0, c=4)
        assert res.dedup.dropped == [(3, 1)]
        assert len(res.points) == 4

    def test_collinear_input_raises(self):
        with pytest.raises(CollinearInputError):
            run([(float(i), 0.0) for i in range(10)], seed=0, c=4)
        with pytest.raises(ValueError):
            run([(0.0, 0.0), (1.0, 1.0)], seed=0, c=4)

    def test_counters_consistent(self):
        rng = np.random.default_rng(6)
        pts = [tuple(p) for p in rng.random((400, 2))]
        res = run(pts, seed=1, c=16)
        totals = res.counters.totals()
        assert totals["points"] == 400
        assert totals["walk_steps"] >= totals["walked_points"] > 0
        assert totals["history_visits"] > 0
        assert totals["conflict_tests"] > 0
        assert res.counters.location_work() > 0
        assert sum(r.points for r in res.counters.rounds) == 400
        rows = res.counters.csv_rows()
        assert rows == sorted(rows, key=lambda r: (r[0],))

    def test_snapshot_storage_linear(self):
        rng = np.random.default_rng(7)
        pts = [tuple(p) for p in rng.random((2000, 2))]
        res = run(pts, seed=1, c=32)
        total = sum(len(s.alive) for s in res.state.snapshots.values())
        assert total <= 8 * 2000


class TestCostProfile:
    def test_clean_run_passes(self):
        rng = np.random.default_rng(8)
        pts = [tuple(p) for p in rng.random((1000, 2))]
        res = run(pts, seed=4, c=4)
        report = validate_cost_profile(res.counters, res.plan)
        assert report.passed, report.violations

    def test_synthetic_violations_detected(self):
        plan = plan_rounds(100, 4)
        counters = RunCounters(mode="nng")
        counters.rounds.append(RoundRecord(round_index=1, points=4))
        bad = RoundRecord(round_index=2, points=8)
        bad.nng_builds = [(1, 10_000)]  # way over 2^{j+1} c
        counters.rounds.append(bad)
        report = validate_cost_profile(counters, plan)
        assert not report.passed
        assert any("exceeds" in v for v in report.violations)

    def test_too_many_builds_detected(self):
        plan = plan_rounds(100, 4)
        counters = RunCounters(mode="nng")
        bad = RoundRecord(round_index=2, points=8)
        bad.nng_builds = [(1, 10), (1, 10), (1, 10)]
        counters.rounds.append(bad)
        report = validate_cost_profile(counters, plan)
        assert not report.passed
