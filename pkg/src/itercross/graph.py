"""Straight-line plane graphs, Euclidean shortest paths and dilation."""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .geometry import (
    ExactPoint,
    PointSet,
    as_point,
    cross,
    distance,
    on_closed_segment,
    segment_intersection,
)


class DisconnectedGraph(ValueError):
    pass


class InvalidDilation(ValueError):
    pass


class PlaneGraph:
    """Vertices at exact points joined by straight edges ``(i, j)`` with ``i < j``.

    Planarity is not enforced here; see :func:`validate_plane`.
    """

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices: Iterable, edges: Iterable[tuple[int, int]] = ()):
        self.vertices: tuple[ExactPoint, ...] = tuple(as_point(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex positions")
        n = len(self.vertices)
        seen = set()
        for i, j in edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for {n} vertices")
            e = (min(i, j), max(i, j))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        self.edges: frozenset[tuple[int, int]] = frozenset(seen)
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for i, j in sorted(self.edges):
            w = distance(self.vertices[i], self.vertices[j])
            adj[i].append((j, w))
            adj[j].append((i, w))
        self._adj = adj

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"PlaneGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self, i: int) -> list[tuple[int, float]]:
        return self._adj[i]

    def index_of(self, p) -> int:
        return self.vertices.index(as_point(p))

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "PlaneGraph":
        return PlaneGraph(self.vertices, list(self.edges) + list(extra))


def validate_plane(G: PlaneGraph) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Pairs of edges that meet anywhere other than a shared end vertex."""
    V = G.vertices
    edges = G.sorted_edges()
    bad = []
    boxes = {e: (min(V[e[0]].x, V[e[1]].x), max(V[e[0]].x, V[e[1]].x),
                 min(V[e[0]].y, V[e[1]].y), max(V[e[0]].y, V[e[1]].y)) for e in edges}
    for e, f in itertools.combinations(edges, 2):
        be, bf = boxes[e], boxes[f]
        if be[1] < bf[0] or bf[1] < be[0] or be[3] < bf[2] or bf[3] < be[2]:
            continue
        a, b = V[e[0]], V[e[1]]
        c, d = V[f[0]], V[f[1]]
        shared = set(e) & set(f)
        hit = segment_intersection((a, b), (c, d))
        if hit is not None:
            if not any(hit == V[k] for k in shared):
                bad.append((e, f))
        elif cross(a, b, c) == 0 and cross(a, b, d) == 0:
            # collinear: overlapping beyond a single shared endpoint is a violation
            inside = [p for p in (c, d) if on_closed_segment(p, a, b) and p not in (a, b)]
            inside += [p for p in (a, b) if on_closed_segment(p, c, d) and p not in (c, d)]
            if inside or (a, b) in ((c, d), (d, c)):
                bad.append((e, f))
    return bad


@dataclass(frozen=True)
class GraphPath:
    vertex_indices: tuple[int, ...]
    length: float


def _single_source(G: PlaneGraph, source: int, with_paths: bool):
    """Dijkstra from ``source``.

    With ``with_paths`` the heap is keyed on (distance, path) so equal-length
    paths resolve to the lexicographically smallest index sequence.
    """
    n = len(G)
    dist = [math.inf] * n
    if not with_paths:
        dist[source] = 0.0
        heap = [(0.0, source)]
        done = [False] * n
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for v, w in G._adj[u]:
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        return dist, None

    best: list[Optional[tuple]] = [None] * n
    best[source] = (0.0, (source,))
    heap = [best[source]]
    done = [False] * n
    while heap:
        d, path = heapq.heappop(heap)
        u = path[-1]
        if done[u]:
            continue
        done[u] = True
        dist[u] = d
        for v, w in G._adj[u]:
            if done[v]:
                continue
            cand = (d + w, path + (v,))
            if best[v] is None or cand < best[v]:
                best[v] = cand
                heapq.heappush(heap, cand)
    paths = [b[1] if b is not None else None for b in best]
    return dist, paths


def shortest_path(G: PlaneGraph, p: int, q: int) -> GraphPath:
    n = len(G)
    if not (0 <= p < n and 0 <= q < n):
        raise IndexError(f"vertex index out of range: {p}, {q}")
    dist, paths = _single_source(G, p, with_paths=True)
    if paths[q] is None:
        raise DisconnectedGraph(f"no path between {p} and {q}")
    return GraphPath(paths[q], dist[q])


def all_pairs_distances(G: PlaneGraph) -> list[list[float]]:
    return [_single_source(G, s, with_paths=False)[0] for s in range(len(G))]


@dataclass(frozen=True)
class DilationReport:
    dilation: float
    witness_pair: tuple[int, int]


def dilation(G: PlaneGraph) -> DilationReport:
    """Maximum over vertex pairs of graph distance over Euclidean distance."""
    n = len(G)
    if n < 2:
        raise ValueError("dilation needs at least two vertices")
    V = G.vertices
    worst, witness = 1.0, (0, 1)
    for s in range(n):
        dist, _ = _single_source(G, s, with_paths=False)
        for t in range(s + 1, n):
            if dist[t] == math.inf:
                raise DisconnectedGraph(f"vertices {s} and {t} are not connected")
            ratio = dist[t] / distance(V[s], V[t])
            if ratio > worst:
                worst, witness = ratio, (s, t)
    return DilationReport(worst, witness)


def maximal_plane_graph(P: Iterable) -> PlaneGraph:
    """Every segment between points of P that is free of other points and crossings.

    For a stable set this is its unique maximal triangulation.
    """
    pts = P.points if isinstance(P, PointSet) else PointSet(P).points
    n = len(pts)
    if n < 3:
        raise ValueError("need at least three points")
    edges = []
    for i, j in itertools.combinations(range(n), 2):
        a, b = pts[i], pts[j]
        if any(on_closed_segment(pts[k], a, b) for k in range(n) if k != i and k != j):
            continue
        if _properly_crossed(pts, i, j):
            continue
        edges.append((i, j))
    return PlaneGraph(pts, edges)


def _properly_crossed(pts: Sequence[ExactPoint], i: int, j: int) -> bool:
    a, b = pts[i], pts[j]
    n = len(pts)
    side = [cross(a, b, pts[k]) for k in range(n)]
    for r in range(n):
        if r in (i, j) or side[r] == 0:
            continue
        for s in range(r + 1, n):
            if s in (i, j) or side[s] == 0 or (side[r] > 0) == (side[s] > 0):
                continue
            c, d = pts[r], pts[s]
            o1 = cross(c, d, a)
            o2 = cross(c, d, b)
            if o1 != 0 and o2 != 0 and (o1 > 0) != (o2 > 0):
                return True
    return False


def is_triangulation(G: PlaneGraph) -> bool:
    """Structural check: plane, hull boundary present, edge count 3n - 3 - h.

    With the hull boundary present and no crossings, that edge count holds
    exactly when every bounded face is a triangle (``h`` counts all points on
    the hull boundary).
    """
    from .geometry import convex_hull

    V = G.vertices
    n = len(V)
    if n < 3 or validate_plane(G):
        return False
    hull = convex_hull(V)
    if len(hull) < 3:
        return False
    on_boundary = [
        k for k in range(n)
        if any(on_closed_segment(V[k], hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull)))
    ]
    # the boundary chain, including collinear boundary points, must be edges
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        chain = sorted(
            (k for k in on_boundary if on_closed_segment(V[k], a, b)),
            key=lambda k: (V[k][0] - a[0]) ** 2 + (V[k][1] - a[1]) ** 2,
        )
        for u, v in zip(chain, chain[1:]):
            if (min(u, v), max(u, v)) not in G.edges:
                return False
    return len(G.edges) == 3 * n - 3 - len(on_boundary)


def ellipse_width(p, q, delta: float) -> float:
    """Width of the ellipse with foci p, q and focal sum ``delta * |pq|``."""
    if delta < 1:
        raise InvalidDilation(f"dilation must be >= 1, got {delta}")
    return distance(as_point(p), as_point(q)) * math.sqrt((delta - 1) * (delta + 1))


@dataclass(frozen=True)
class EllipseViolation:
    pair: tuple[int, int]
    vertex: int
    ratio: float


@dataclass(frozen=True)
class EllipseCheckReport:
    delta: float
    pairs_checked: int
    violations: tuple[EllipseViolation, ...]
    worst_slack: float
    worst_pair: tuple[int, int]
    worst_vertex: int

    @property
    def passed(self) -> bool:
        return not self.violations


def check_paths_in_ellipses(G: PlaneGraph, delta: float, tol: float = 1e-9) -> EllipseCheckReport:
    """Check every vertex t on each chosen shortest p-q path against
    ``(|pt| + |tq|) / |pq| <= delta``.

    Slack is ``delta - ratio``; the report keeps the smallest one.
    """
    V = G.vertices
    n = len(V)
    violations = []
    worst = (math.inf, (0, 0), 0)
    checked = 0
    for s in range(n):
        _, paths = _single_source(G, s, with_paths=True)
        for t in range(s + 1, n):
            path = paths[t]
            if path is None:
                raise DisconnectedGraph(f"vertices {s} and {t} are not connected")
            checked += 1
            base = distance(V[s], V[t])
            for k in path:
                ratio = (distance(V[s], V[k]) + distance(V[k], V[t])) / base
                slack = delta - ratio
                if slack < worst[0]:
                    worst = (slack, (s, t), k)
                if ratio > delta + tol:
                    violations.append(EllipseViolation((s, t), k, ratio))
    return EllipseCheckReport(delta, checked, tuple(violations), worst[0], worst[1], worst[2])
