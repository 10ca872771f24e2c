"""Seeded point-set generators for benchmarks and tests.

All three distributions live in or around the unit square and are
deterministic functions of (name, n, seed).  uniform-square and grid-jitter
have spread polynomial in n with overwhelming probability; clustered makes
tight, far-apart Gaussian blobs, which is the stress case for the level-set
cascade (whole clusters promote representatives down many levels).
"""

from __future__ import annotations

import numpy as np

DISTRIBUTIONS = ("uniform-square", "clustered", "grid-jitter")


def generate(dist: str, n: int, seed: int) -> list[tuple[float, float]]:
    if n < 1:
        raise ValueError("need n >= 1")
    rng = np.random.default_rng(seed)
    if dist == "uniform-square":
        pts = rng.random((n, 2))
    elif dist == "clustered":
        nblobs = max(2, int(round(n ** (1.0 / 3.0))))
        centers = rng.random((nblobs, 2))
        which = rng.integers(0, nblobs, size=n)
        sigma = 0.25 / (nblobs * nblobs)
        pts = centers[which] + rng.normal(0.0, sigma, size=(n, 2))
    elif dist == "grid-jitter":
        g = int(np.ceil(np.sqrt(n)))
        cells = np.arange(g * g)[:n]
        cx = (cells % g + 0.5) / g
        cy = (cells // g + 0.5) / g
        jitter = rng.uniform(-0.25 / g, 0.25 / g, size=(n, 2))
        pts = np.stack((cx, cy), axis=1) + jitter
    else:
        raise ValueError(f"unknown distribution {dist!r}")
    return [(float(x), float(y)) for x, y in pts]
