"""Delaunay triangulation by incremental hull fan plus Lawson edge flips.

Predicates run on integers: all points are scaled by the common denominator
of their coordinates first, so in-circle tests are exact and fast.
"""

from __future__ import annotations

import math
from typing import Iterable

from .geometry import PointSet
from .graph import PlaneGraph


class CollinearInput(ValueError):
    pass


def _orient(a, b, c) -> int:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _incircle(a, b, c, d) -> int:
    """Positive when d lies strictly inside the circle through ccw a, b, c."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    return (alift * (bdx * cdy - cdx * bdy)
            + blift * (cdx * ady - adx * cdy)
            + clift * (adx * bdy - bdx * ady))


def _integer_coords(pts) -> list[tuple[int, int]]:
    scale = 1
    for p in pts:
        for c in p:
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
    return [(int(p.x * scale), int(p.y * scale)) for p in pts]


class _Mesh:
    """Triangles stored as directed edge -> opposite vertex (ccw orientation)."""

    def __init__(self):
        self.opp: dict[tuple[int, int], int] = {}

    def add(self, a: int, b: int, c: int):
        self.opp[(a, b)] = c
        self.opp[(b, c)] = a
        self.opp[(c, a)] = b

    def remove(self, a: int, b: int, c: int):
        del self.opp[(a, b)], self.opp[(b, c)], self.opp[(c, a)]

    def flip(self, i: int, j: int):
        k = self.opp[(i, j)]
        l = self.opp[(j, i)]
        self.remove(i, j, k)
        self.remove(j, i, l)
        self.add(l, j, k)
        self.add(k, i, l)
        return k, l

    def undirected_edges(self) -> set[tuple[int, int]]:
        return {(min(a, b), max(a, b)) for a, b in self.opp}


def _initial_triangulation(P: list[tuple[int, int]]) -> _Mesh:
    n = len(P)
    m = 2
    while m < n and _orient(P[0], P[1], P[m]) == 0:
        m += 1
    if m == n:
        raise CollinearInput("all points are collinear")
    mesh = _Mesh()
    apex = m
    # fan the sorted collinear prefix 0..m-1 to the first off-line point
    side = _orient(P[0], P[1], P[apex])
    for i in range(m - 1):
        if side > 0:
            mesh.add(i, i + 1, apex)
        else:
            mesh.add(i + 1, i, apex)
    if side > 0:
        hull = list(range(m)) + [apex]
    else:
        hull = [apex] + list(range(m - 1, -1, -1))
    # hull is ccw; rotate so it can be scanned cyclically
    for p in range(m + 1, n):
        h = len(hull)
        visible = [_orient(P[hull[i]], P[hull[(i + 1) % h]], P[p]) < 0 for i in range(h)]
        for i in range(h):
            if visible[i]:
                mesh.add(hull[i], p, hull[(i + 1) % h])
        # visible edges form one cyclic run; replace its interior vertices by p
        start = next(i for i in range(h) if visible[i] and not visible[i - 1])
        end = start
        while visible[end % h]:
            end += 1
        keep = [hull[(end + t) % h] for t in range(h - (end - start) + 1)]
        hull = keep + [p]
    return mesh


def delaunay(P: Iterable) -> PlaneGraph:
    """Delaunay triangulation of P as a plane graph on P's canonical order.

    Cocircular ties are settled by flipping toward the lexicographically
    smaller diagonal wherever both diagonals are Delaunay.
    """
    pts = P.points if isinstance(P, PointSet) else PointSet(P).points
    if len(pts) < 3:
        raise ValueError("need at least three points")
    Z = _integer_coords(pts)
    mesh = _initial_triangulation(Z)

    def legalize(tie_break: bool) -> bool:
        changed = False
        stack = sorted(e for e in mesh.undirected_edges())
        while stack:
            i, j = stack.pop()
            if (i, j) not in mesh.opp or (j, i) not in mesh.opp:
                continue
            k = mesh.opp[(i, j)]
            l = mesh.opp[(j, i)]
            s = _incircle(Z[i], Z[j], Z[k], Z[l])
            if s > 0 or (tie_break and s == 0 and (min(k, l), max(k, l)) < (i, j)):
                mesh.flip(i, j)
                changed = True
                for a, b in ((i, k), (k, j), (j, l), (l, i)):
                    stack.append((min(a, b), max(a, b)))
        return changed

    legalize(False)
    while legalize(True):
        pass
    return PlaneGraph(pts, sorted(mesh.undirected_edges()))
