import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from itercross.closure import Stable, classify_stability
from itercross.delaunay import CollinearInput, delaunay
from itercross.geometry import PointSet, point
from itercross.graph import (
    DisconnectedGraph,
    InvalidDilation,
    PlaneGraph,
    all_pairs_distances,
    check_paths_in_ellipses,
    dilation,
    ellipse_width,
    is_triangulation,
    maximal_plane_graph,
    shortest_path,
    validate_plane,
)

from oracles import floyd_warshall

SQ = [(0, 0), (1, 0), (1, 1), (0, 1)]
SQ_CYCLE = [(0, 1), (1, 2), (2, 3), (0, 3)]
SQ_CENTER = PlaneGraph(SQ + [("1/2", "1/2")], SQ_CYCLE + [(k, 4) for k in range(4)])


def random_points(rng, n, grid=10**6):
    pts = set()
    while len(pts) < n:
        pts.add((rng.randint(0, grid), rng.randint(0, grid)))
    return PointSet(pts)


def test_validate_plane():
    both = PlaneGraph(SQ, SQ_CYCLE + [(0, 2), (1, 3)])
    assert validate_plane(both) == [((0, 2), (1, 3))]
    assert validate_plane(PlaneGraph(SQ, SQ_CYCLE + [(0, 2)])) == []


def test_validate_plane_touching_and_overlap():
    # edge passing through another edge's endpoint
    g = PlaneGraph([(0, 0), (2, 0), (1, 0), (1, 1)], [(0, 1), (2, 3)])
    assert validate_plane(g) == [((0, 1), (2, 3))]
    # collinear overlap
    g = PlaneGraph([(0, 0), (2, 0), (1, 0), (3, 0)], [(0, 1), (2, 3)])
    assert len(validate_plane(g)) == 1
    # collinear edges meeting at a shared vertex are fine
    g = PlaneGraph([(0, 0), (1, 0), (2, 0)], [(0, 1), (1, 2)])
    assert validate_plane(g) == []


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        PlaneGraph(SQ, [(1, 1)])
    with pytest.raises(ValueError):
        PlaneGraph(SQ, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        PlaneGraph(SQ, [(0, 9)])


def test_shortest_path_examples():
    g = PlaneGraph([(0, 0), (3, 4)], [(0, 1)])
    assert shortest_path(g, 0, 1).vertex_indices == (0, 1)
    assert shortest_path(g, 0, 1).length == 5.0
    cyc = PlaneGraph(SQ, SQ_CYCLE)
    p = shortest_path(cyc, 0, 2)
    assert p.length == 2.0 and p.vertex_indices == (0, 1, 2)
    assert shortest_path(cyc, 2, 0).vertex_indices == (2, 1, 0)
    p = shortest_path(SQ_CENTER, 0, 2)
    assert p.vertex_indices == (0, 4, 2)
    assert math.isclose(p.length, math.sqrt(2), rel_tol=1e-12)


def test_disconnected():
    g = PlaneGraph([(0, 0), (1, 0), (5, 5)], [(0, 1)])
    with pytest.raises(DisconnectedGraph):
        shortest_path(g, 0, 2)
    with pytest.raises(DisconnectedGraph):
        dilation(g)


def test_dilation_examples():
    rep = dilation(PlaneGraph(SQ, SQ_CYCLE + [(0, 2)]))
    assert abs(rep.dilation - math.sqrt(2)) <= 1e-12
    assert rep.witness_pair == (1, 3)
    assert abs(dilation(SQ_CENTER).dilation - 1) <= 1e-12
    assert dilation(PlaneGraph([(0, 0), (4, 1), (1, 3)], [(0, 1), (1, 2), (0, 2)])).dilation == 1.0


def test_maximal_plane_graph_examples():
    tri = maximal_plane_graph([(0, 0), (1, 0), (0, 1)])
    assert tri.sorted_edges() == [(0, 1), (0, 2), (1, 2)]
    g = maximal_plane_graph(SQ + [("1/2", "1/2")])
    # canonical order: (0,0) (0,1) (1/2,1/2) (1,0) (1,1)
    assert g.sorted_edges() == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert g.edges == _brute_maximal_edges(g.vertices)


def _brute_maximal_edges(V):
    from itercross.geometry import segment_intersection

    edges = set()
    n = len(V)
    for i in range(n):
        for j in range(i + 1, n):
            ok = True
            for r in range(n):
                for s in range(r + 1, n):
                    if {r, s} & {i, j}:
                        continue
                    t = segment_intersection((V[i], V[j]), (V[r], V[s]))
                    if t is not None and t not in (V[i], V[j], V[r], V[s]):
                        ok = False
            if any(k not in (i, j) and _strictly_inside(V[k], V[i], V[j]) for k in range(n)):
                ok = False
            if ok:
                edges.add((i, j))
    return edges


def _strictly_inside(p, a, b):
    from itercross.geometry import on_closed_segment

    return on_closed_segment(p, a, b) and p not in (a, b)


def test_maximal_graph_of_stable_sets_has_dilation_one():
    for pts in (SQ, [(0, 0), (4, 0), (0, 4), (1, 1)], [(0, 0), (2, 0), (4, 0), (2, 2)]):
        verdict = classify_stability(pts)
        fixed = verdict.points if isinstance(verdict, Stable) else verdict.fixed_point
        g = maximal_plane_graph(fixed)
        assert validate_plane(g) == []
        assert is_triangulation(g)
        assert abs(dilation(g).dilation - 1) <= 1e-12


def test_delaunay_examples():
    tri = delaunay([(0, 0), (1, 0), (0, 1)])
    assert tri.sorted_edges() == [(0, 1), (0, 2), (1, 2)]
    sq = delaunay(SQ)
    diagonals = {(0, 3), (1, 2)} & sq.edges  # canonical order (0,0) (0,1) (1,0) (1,1)
    assert diagonals == {(0, 3)}
    assert len(sq.edges) == 5
    with pytest.raises(CollinearInput):
        delaunay([(0, 0), (1, 1), (2, 2)])


def test_delaunay_random_structure():
    rng = random.Random(3)
    for _ in range(5):
        g = delaunay(random_points(rng, 50))
        assert validate_plane(g) == []
        assert is_triangulation(g)


def test_delaunay_degenerate_inputs():
    grid = [(x, y) for x in range(5) for y in range(4)]
    g = delaunay(grid)
    assert is_triangulation(g) and validate_plane(g) == []
    assert delaunay(list(reversed(grid))) == g
    circle = [(5, 0), (4, 3), (3, 4), (0, 5), (-3, 4), (-4, 3), (-5, 0), (-4, -3), (0, -5), (3, -4)]
    g = delaunay(circle)
    assert is_triangulation(g)


def _empty_circumcircle(g):
    """Every face triangle has no vertex strictly inside its circumcircle.

    Faces are the mutually adjacent triples with no other vertex inside or on
    the triangle.
    """
    from itercross.delaunay import _incircle
    from itercross.geometry import point_in_convex_polygon

    V = g.vertices
    adj = {i: set() for i in range(len(V))}
    for i, j in g.edges:
        adj[i].add(j)
        adj[j].add(i)
    for i, j in g.edges:
        for k in adj[i] & adj[j]:
            a, b, c = V[i], V[j], V[k]
            if (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) < 0:
                b, c = c, b
            if any(point_in_convex_polygon(V[m], (a, b, c)) for m in range(len(V)) if m not in (i, j, k)):
                continue
            for m in range(len(V)):
                if _incircle(a, b, c, V[m]) > 0:
                    return False
    return True


@given(st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12)), min_size=3, max_size=25, unique=True))
@settings(max_examples=25, deadline=None)
def test_delaunay_property(raw):
    try:
        g = delaunay(raw)
    except CollinearInput:
        return
    assert validate_plane(g) == []
    assert is_triangulation(g)
    assert _empty_circumcircle(g)


def test_all_pairs_matches_floyd_warshall():
    rng = random.Random(11)
    for _ in range(10):
        n = rng.randint(3, 12)
        g = delaunay(random_points(rng, n, 1000))
        fw = floyd_warshall(g.vertices, g.edges)
        ours = all_pairs_distances(g)
        for i in range(n):
            for j in range(n):
                assert math.isclose(ours[i][j], fw[i][j], rel_tol=1e-12, abs_tol=1e-12)


def test_dilation_similarity_invariant():
    rng = random.Random(5)
    g = delaunay(random_points(rng, 30, 1000))
    base = dilation(g).dilation
    # rotation by the rational 3-4-5 angle, scaling, translation
    moved = PlaneGraph([((3 * p.x - 4 * p.y) * 7 + 11, (4 * p.x + 3 * p.y) * 7 - 2) for p in g.vertices], g.edges)
    assert abs(dilation(moved).dilation - base) <= 1e-9


def test_adding_noncrossing_edge_never_increases_dilation():
    rng = random.Random(9)
    for _ in range(5):
        full = delaunay(random_points(rng, 20, 1000))
        edges = full.sorted_edges()
        rng.shuffle(edges)
        # spanning tree first (connected), then add remaining edges one by one
        parent = list(range(len(full)))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        tree, rest = [], []
        for i, j in edges:
            if find(i) != find(j):
                parent[find(i)] = find(j)
                tree.append((i, j))
            else:
                rest.append((i, j))
        g = PlaneGraph(full.vertices, tree)
        prev = dilation(g).dilation
        for e in rest[:8]:
            g = g.with_edges([e])
            cur = dilation(g).dilation
            assert cur <= prev + 1e-12
            prev = cur


def test_ellipse_width():
    assert ellipse_width(point(0, 0), point(1, 0), 1) == 0
    assert math.isclose(ellipse_width((0, 0), (2, 0), math.sqrt(2)), 2, rel_tol=1e-12)
    w = ellipse_width((0, 0), ("16.32", 0), 1.0000047)
    assert math.isclose(w, 16.32 * math.sqrt(1.0000047**2 - 1), rel_tol=1e-6)
    assert abs(w - 0.05005) < 5e-5
    with pytest.raises(InvalidDilation):
        ellipse_width((0, 0), (1, 0), 0.99)


def test_check_paths_in_ellipses():
    tri = PlaneGraph([(0, 0), (1, 0), (0, 1)], [(0, 1), (1, 2), (0, 2)])
    rep = check_paths_in_ellipses(tri, 1.0)
    assert rep.passed and rep.worst_slack == 0.0 and rep.pairs_checked == 3
    rep = check_paths_in_ellipses(SQ_CENTER, 1.0)
    assert rep.passed and abs(rep.worst_slack) <= 1e-12
    cyc = PlaneGraph(SQ, SQ_CYCLE)
    assert not check_paths_in_ellipses(cyc, 1.2).passed
    rng = random.Random(2)
    for _ in range(5):
        g = delaunay(random_points(rng, 25))
        rep = check_paths_in_ellipses(g, dilation(g).dilation)
        assert rep.passed and rep.worst_slack >= -1e-9
