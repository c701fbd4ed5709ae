from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from itercross.closure import ClosureBudgets, intersection_closure
from itercross.cover import (
    EmptyInput,
    NotFiveConvex,
    RegionA,
    cover_radius,
    density_profile,
    is_eps_cover,
    region_A,
    sample_region,
)
from itercross.geometry import PointSet, convex_hull, point, point_in_convex_polygon, regular_polygon

from oracles import brute_closure

pts = st.lists(st.tuples(st.integers(-20, 20), st.integers(-20, 20)), min_size=1, max_size=15)


def brute_radius_sq(Q, T):
    return max(min((F(t[0]) - F(q[0])) ** 2 + (F(t[1]) - F(q[1])) ** 2 for q in Q) for t in T)


def test_cover_radius_examples():
    Q = [(0, 0), (1, 2), (3, 3)]
    assert cover_radius(Q, Q).radius_achieved == 0
    rep = cover_radius([(0, 0)], [(3, 4)])
    assert rep.radius_achieved == 5 and rep.radius_squared == 25
    assert rep.worst_target == point(3, 4)
    with pytest.raises(EmptyInput):
        cover_radius([], [(0, 0)])
    with pytest.raises(EmptyInput):
        cover_radius([(0, 0)], [])


def test_is_eps_cover_closed_boundary():
    assert is_eps_cover([(0, 0)], [(0, 1)], 1).is_cover
    assert not is_eps_cover([(0, 0)], [(0, 1)], 0.999).is_cover
    assert is_eps_cover([(0, 0), (5, 5)], [(5, 5)], 0).is_cover
    # float targets go through the tolerant branch
    assert is_eps_cover([(0, 0)], [(0.0, 1.0)], 1.0).is_cover
    assert not is_eps_cover([(0, 0)], [(0.0, 1.0)], 0.999).is_cover


@given(pts, pts)
@settings(max_examples=60, deadline=None)
def test_exact_radius_matches_brute_force(Q, T):
    rep = cover_radius(Q, T)
    assert rep.radius_squared == brute_radius_sq(Q, T)


@given(pts, pts, pts)
@settings(max_examples=40, deadline=None)
def test_monotonicity(Q, extra, T):
    base = cover_radius(Q, T).radius_squared
    assert cover_radius(Q + extra, T).radius_squared <= base
    assert cover_radius(Q, T + extra).radius_squared >= base


@given(pts, pts, pts)
@settings(max_examples=40, deadline=None)
def test_cover_triangle_composition(Q, P, R):
    e1 = cover_radius(Q, P).radius_achieved
    e2 = cover_radius(P, R).radius_achieved
    assert is_eps_cover(Q, R, e1 + e2 + 1e-9).is_cover


def test_square_200_against_boundary_samples():
    from itercross.certificate import square_cover_points

    Q, r = square_cover_points(16, 200)
    T, _ = square_cover_points(16, 10_000)
    rep = cover_radius(Q, T)
    assert rep.radius_squared == F(4, 25) ** 2
    assert r == F(4, 25)


def test_region_A_pentagon():
    pent = regular_polygon(5)
    A = region_A(pent)
    crossings = brute_closure(pent) - set(pent)
    assert len(A.polygon) == 5
    assert set(A.polygon) == crossings
    hull = convex_hull(pent)
    assert all(point_in_convex_polygon(p, hull) for p in A.polygon)


def test_region_A_house():
    house = [(0, 0), (2, 0), (2, 2), (1, 3), (0, 2)]
    A = region_A(house)
    assert list(A.polygon) == convex_hull(brute_closure(house) - {point(*p) for p in house})
    assert set(A.polygon) == {point("1/2", "3/2"), point(1, 1), point("3/2", "3/2"),
                              point("4/3", 2), point("2/3", 2)}


def test_region_A_rejects_bad_input():
    with pytest.raises(NotFiveConvex):
        region_A([(0, 0), (1, 0), (2, 0), (3, 1), (0, 5)])
    with pytest.raises(NotFiveConvex):
        region_A([(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)])
    with pytest.raises(NotFiveConvex):
        region_A(regular_polygon(6))


def test_sample_region_unit_square():
    sq = RegionA(((0, 0), (1, 0), (1, 1), (0, 1)))
    s = sample_region(sq, "1/2")
    interior = [p for p in s if sq.contains(p, strict=True)]
    assert interior == [point("1/2", "1/2")]
    assert len(s) - len(interior) == 8
    coarse = sample_region(sq, 5)
    assert sorted(coarse) == sorted(sq.polygon)


def test_sample_region_points_inside():
    A = region_A(regular_polygon(5))
    for h in (0.05, 0.013, A.diameter() / 50):
        s = sample_region(A, h)
        assert all(A.contains(p) for p in s)
        assert len(set(s)) == len(s)


def test_region_inside_hull_of_input():
    import random

    rng = random.Random(4)
    done = 0
    while done < 10:
        P = PointSet((rng.randint(0, 30), rng.randint(0, 30)) for _ in range(5))
        try:
            A = region_A(P)
        except NotFiveConvex:
            continue
        done += 1
        hull = convex_hull(P)
        assert all(point_in_convex_polygon(p, hull) for p in A.polygon)


def test_density_profile_small_cases():
    pent = regular_polygon(5)
    assert density_profile(pent, 0).entries == []
    prof = density_profile(pent, 1)
    assert len(prof.entries) == 1 and prof.sizes == [10]
    samples = sample_region(prof.region, prof.pitch)
    direct = cover_radius(intersection_closure(pent), samples).radius_achieved
    assert prof.entries[0] == (1, direct)
    with pytest.raises(NotFiveConvex):
        density_profile([(0, 0), (1, 0), (0, 1), (1, 1), ("1/2", "1/3")], 2)


def test_density_profile_budget_stop():
    prof = density_profile(regular_polygon(5), 3, budgets=ClosureBudgets(max_points=1000))
    assert prof.stop_reason == "max_points"
    assert [k for k, _ in prof.entries] == [1, 2]
