"""Command-line interface.

Subcommands: generate (seeded point sets), triangulate (run the construction,
write triangles, optionally an SVG and a counters CSV), verify (structural
checks plus brute-force comparison for small inputs), bench (instrumented
size/seed sweeps as CSV) and spread (the diagnostic spread estimate).
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

from .driver import run, validate_cost_profile
from .fileio import ParseError, read_points, read_triangles, write_points, write_triangles
from .generators import DISTRIBUTIONS, generate
from .geometry import ingest_points
from .nng import compute_spread
from .oracle import brute_delaunay_report, check_delaunay_property, check_euler
from .render import render_svg
from .triangulation import CollinearInputError

_BRUTE_VERIFY_CAP = 250


def _cmd_generate(args) -> int:
    pts = generate(args.dist, args.n, args.seed)
    write_points(args.output, pts)
    return 0


def _cmd_triangulate(args) -> int:
    points = read_points(args.input)
    result = run(points, seed=args.seed, c=args.round_base)
    tris = result.triangles_input_ids()
    write_triangles(args.output, tris)
    if result.dedup.dropped:
        print(
            f"dropped {len(result.dedup.dropped)} duplicate point(s)",
            file=sys.stderr,
        )
    if args.svg:
        render_svg(result.points, tris, args.svg)
    if args.counters:
        with open(args.counters, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["round", "phase", "metric", "value"])
            writer.writerows(result.counters.csv_rows())
    report = validate_cost_profile(result.counters, result.plan)
    if not report.passed:
        print("cost profile violations:", *report.violations, file=sys.stderr)
        return 1
    return 0


def _cmd_verify(args) -> int:
    points = read_points(args.points)
    clean, _ = ingest_points(points)
    tris = read_triangles(args.triangles)
    prop = check_delaunay_property(clean, tris)
    if not prop.passed:
        print(f"FAIL delaunay-property: {prop.violations[0]}", file=sys.stderr)
        return 1
    euler = check_euler(clean, tris)
    if not euler.passed:
        print(f"FAIL euler: {euler.violations[0]}", file=sys.stderr)
        return 1
    if len(clean) <= _BRUTE_VERIFY_CAP:
        want, degenerate = brute_delaunay_report(clean)
        if not degenerate and set(tris) != want:
            missing = sorted(want - set(tris))[:3]
            extra = sorted(set(tris) - want)[:3]
            print(
                f"FAIL brute-force: missing {missing} extra {extra}",
                file=sys.stderr,
            )
            return 1
    print(f"OK {len(tris)} triangles over {len(clean)} points")
    return 0


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    rows = []
    for n in sizes:
        for seed in range(args.seeds):
            pts = generate(args.dist, n, seed)
            t0 = time.perf_counter()
            result = run(pts, seed=seed, c=args.round_base, mode=args.mode)
            wall = time.perf_counter() - t0
            totals = result.counters.totals()
            work = result.counters.location_work()
            rows.append(
                {
                    "dist": args.dist,
                    "mode": args.mode,
                    "n": n,
                    "seed": seed,
                    "c": args.round_base,
                    "wall_s": round(wall, 4),
                    "nng_builds": totals.get("nng_builds", 0),
                    "nng_input_total": totals.get("nng_input_total", 0),
                    "history_visits": totals.get("history_visits", 0),
                    "walk_steps": totals.get("walk_steps", 0),
                    "conflict_tests": totals.get("conflict_tests", 0),
                    "cavity_triangles": totals.get("cavity_triangles", 0),
                    "work_per_point": round(work / n, 3),
                }
            )
            report = validate_cost_profile(result.counters, result.plan)
            if not report.passed:
                print("cost profile violations:", *report.violations,
                      file=sys.stderr)
                return 1
    out = open(args.output, "w", encoding="utf-8", newline="") if args.output else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.output:
            out.close()
    return 0


def _cmd_spread(args) -> int:
    points = read_points(args.input)
    clean, _ = ingest_points(points)
    est = compute_spread(clean)
    print(
        f"spread {est.value:.6g} (min distance {est.min_distance:.6g}, "
        f"bbox diagonal {est.bbox_diagonal:.6g}, diameter overestimated by "
        f"at most {est.diameter_overestimate_factor:.4g}x)"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nndt",
        description="Delaunay triangulation via randomized incremental "
        "construction with nearest-neighbor-graph point location",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a seeded point set")
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform-square")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("triangulate", help="triangulate a points file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--round-base", type=int, default=32)
    p.add_argument("--svg")
    p.add_argument("--counters")
    p.set_defaults(func=_cmd_triangulate)

    p = sub.add_parser("verify", help="check a triangulation against its points")
    p.add_argument("--points", required=True)
    p.add_argument("--triangles", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", help="instrumented size/seed sweep (CSV)")
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform-square")
    p.add_argument("--sizes", required=True, help="comma-separated sizes")
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--round-base", type=int, default=32)
    p.add_argument("--mode", choices=("nng", "plain"), default="nng")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("spread", help="diagnostic spread of a points file")
    p.add_argument("--input", required=True)
    p.set_defaults(func=_cmd_spread)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, CollinearInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
