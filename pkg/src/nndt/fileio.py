"""Text file formats: points ("x y" per line) and triangles ("i j k").

Lines starting with '#' and blank lines are ignored; parse errors report the
offending line number.  Floats are written with repr, which round-trips
exactly.
"""

from __future__ import annotations


class ParseError(ValueError):
    pass


def read_points(path) -> list[tuple[float, float]]:
    points = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(
                    f"{path}:{lineno}: expected 'x y', got {line!r}"
                )
            try:
                points.append((float(parts[0]), float(parts[1])))
            except ValueError:
                raise ParseError(
                    f"{path}:{lineno}: not a coordinate pair: {line!r}"
                ) from None
    return points


def write_points(path, points) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for x, y in points:
            fh.write(f"{x!r} {y!r}\n")


def read_triangles(path) -> list[tuple[int, int, int]]:
    tris = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(
                    f"{path}:{lineno}: expected 'i j k', got {line!r}"
                )
            try:
                tris.append((int(parts[0]), int(parts[1]), int(parts[2])))
            except ValueError:
                raise ParseError(
                    f"{path}:{lineno}: not an index triple: {line!r}"
                ) from None
    return tris


def write_triangles(path, triangles) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for a, b, c in triangles:
            fh.write(f"{a} {b} {c}\n")
