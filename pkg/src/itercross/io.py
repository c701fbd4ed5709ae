"""Point and graph text files.

Point file: one point per line, two whitespace-separated coordinates, each a
decimal literal (read exactly) or ``p/q``. ``#`` starts a comment line.

Graph file: a point section, one blank line, then one edge per line as two
0-based vertex indices.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Union

from .geometry import ExactPoint, PointSet
from .graph import PlaneGraph

_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$|^[+-]?\d+/\d+$")


class PointFileError(ValueError):
    def __init__(self, message: str, path=None, line: int = None):
        where = f"{path}:{line}: " if line is not None else (f"{path}: " if path else "")
        super().__init__(where + message)
        self.line = line


def parse_coordinate(token: str) -> Fraction:
    if not _NUMBER.match(token):
        raise ValueError(f"not a decimal or p/q number: {token!r}")
    value = Fraction(token)
    return value


def format_coordinate(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _parse_point(line: str, path, lineno: int) -> ExactPoint:
    parts = line.split()
    if len(parts) != 2:
        raise PointFileError(f"expected two coordinates, got {len(parts)}", path, lineno)
    try:
        return ExactPoint(parse_coordinate(parts[0]), parse_coordinate(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise PointFileError(str(exc), path, lineno) from None


def parse_points(text: str, path=None) -> list[ExactPoint]:
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        pts.append(_parse_point(line, path, lineno))
    if not pts:
        raise PointFileError("no points", path)
    return pts


def read_points(path: Union[str, Path]) -> PointSet:
    return PointSet(parse_points(Path(path).read_text(encoding="utf-8"), path))


def format_points(points: Iterable, header: str = None) -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    lines += [f"{format_coordinate(p[0])} {format_coordinate(p[1])}" for p in points]
    return "\n".join(lines) + "\n"


def write_points(path: Union[str, Path], points: Iterable, header: str = None) -> None:
    Path(path).write_text(format_points(points, header), encoding="utf-8")


def parse_graph(text: str, path=None) -> PlaneGraph:
    lines = text.splitlines()
    pts: list[ExactPoint] = []
    edges: list[tuple[int, int]] = []
    section = "points"
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if pts:
                section = "edges"
            continue
        if section == "points":
            pts.append(_parse_point(line, path, lineno))
        else:
            parts = line.split()
            if len(parts) != 2 or not all(t.isdigit() for t in parts):
                raise PointFileError("expected two vertex indices", path, lineno)
            edges.append((int(parts[0]), int(parts[1])))
    if not pts:
        raise PointFileError("no points", path)
    try:
        return PlaneGraph(pts, edges)
    except ValueError as exc:
        raise PointFileError(str(exc), path) from None


def read_graph(path: Union[str, Path]) -> PlaneGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"), path)


def format_graph(G: PlaneGraph) -> str:
    return format_points(G.vertices) + "\n" + "".join(f"{i} {j}\n" for i, j in G.sorted_edges())


def write_graph(path: Union[str, Path], G: PlaneGraph) -> None:
    Path(path).write_text(format_graph(G), encoding="utf-8")
