"""Delaunay triangulation via randomized incremental construction with
nearest-neighbor-graph point location."""

from .driver import RoundPlan, RunResult, plan_rounds, run, run_ordered, validate_cost_profile
from .geometry import in_circle, ingest_points, orient2d, point_in_triangle, quantize
from .nng import compute_spread, connected_components, nearest_neighbor_graph
from .oracle import brute_delaunay, brute_nng, check_delaunay_property, check_euler
from .quadtree import build_compressed_quadtree
from .triangulation import Triangulation, bootstrap
from .wspd import compute_wspd

__all__ = [
    "RoundPlan",
    "RunResult",
    "Triangulation",
    "bootstrap",
    "brute_delaunay",
    "brute_nng",
    "build_compressed_quadtree",
    "check_delaunay_property",
    "check_euler",
    "compute_spread",
    "compute_wspd",
    "connected_components",
    "in_circle",
    "ingest_points",
    "nearest_neighbor_graph",
    "orient2d",
    "plan_rounds",
    "point_in_triangle",
    "quantize",
    "run",
    "run_ordered",
    "validate_cost_profile",
]
