"""Cover radii (directed Hausdorff distances), region A and density profiles."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .closure import ClosureBudgets, ClosureMode, intersection_closure, iterate
from .geometry import (
    ExactPoint,
    Number,
    PointSet,
    as_point,
    convex_hull,
    decimal_rational,
    in_convex_position,
    point_in_convex_polygon,
    polygon_area2,
    squared_distance,
)


class EmptyInput(ValueError):
    pass


class NotFiveConvex(ValueError):
    pass


FLOAT_TOL = 1e-12


@dataclass(frozen=True)
class CoverReport:
    is_cover: bool
    radius_achieved: float
    worst_target: tuple
    eps: Optional[float] = None
    # exact squared radius; None when some target is not a rational point
    radius_squared: Optional[Fraction] = None


def _is_exact(p) -> bool:
    return isinstance(p, ExactPoint) or all(isinstance(c, (int, Fraction)) for c in p)


def _nearest_sq(Q: np.ndarray, T: np.ndarray, chunk: int = 1 << 22) -> tuple[np.ndarray, np.ndarray]:
    """Float squared distance from each target to its nearest cover point."""
    best = np.empty(len(T))
    arg = np.empty(len(T), dtype=np.int64)
    step = max(1, chunk // max(1, len(Q)))
    for lo in range(0, len(T), step):
        t = T[lo:lo + step]
        d2 = (t[:, None, 0] - Q[None, :, 0]) ** 2 + (t[:, None, 1] - Q[None, :, 1]) ** 2
        arg[lo:lo + step] = d2.argmin(axis=1)
        best[lo:lo + step] = d2[np.arange(len(t)), arg[lo:lo + step]]
    return best, arg


def cover_radius(Q: Iterable, targets: Iterable, chunk: int = 1 << 22) -> CoverReport:
    """Largest distance from a target to its nearest point of Q.

    Nearest neighbours are found in floating point. When every target is an
    exact rational point, all candidates within a safety margin of the float
    minimum are re-ranked exactly, so ``radius_squared`` is the exact value.
    """
    qs = list(Q)
    ts = list(targets)
    if not qs or not ts:
        raise EmptyInput("cover and target sets must be nonempty")
    qf = np.array([(float(p[0]), float(p[1])) for p in qs], dtype=float)
    tf = np.array([(float(p[0]), float(p[1])) for p in ts], dtype=float)
    best, arg = _nearest_sq(qf, tf, chunk)

    if not all(_is_exact(p) for p in ts):
        k = int(np.argmax(best))
        return CoverReport(True, math.sqrt(best[k]), tuple(ts[k]))

    qx = [as_point(p) for p in qs]
    scale = float(max(np.abs(qf).max(), np.abs(tf).max(), 1.0))
    margin = 1e-9 * scale * scale
    worst_sq, worst_k = None, 0
    # Only targets whose float radius is near the float maximum can attain the exact maximum.
    fmax = best.max()
    for k in np.flatnonzero(best >= fmax - 2 * margin):
        t = as_point(ts[k])
        d2 = (tf[k, 0] - qf[:, 0]) ** 2 + (tf[k, 1] - qf[:, 1]) ** 2
        cands = np.flatnonzero(d2 <= best[k] + margin)
        exact = min(squared_distance(t, qx[c]) for c in cands)
        if worst_sq is None or exact > worst_sq:
            worst_sq, worst_k = exact, int(k)
    return CoverReport(True, math.sqrt(worst_sq), as_point(ts[worst_k]), None, worst_sq)


def is_eps_cover(Q: Iterable, targets: Iterable, eps: Number) -> CoverReport:
    """Closed-neighbourhood cover test: ``radius <= eps``.

    Compared exactly against ``eps`` read as a decimal when the targets are
    rational points; otherwise with a 1e-12 relative tolerance.
    """
    eps_q = decimal_rational(eps)
    if eps_q < 0:
        raise ValueError("eps must be nonnegative")
    rep = cover_radius(Q, targets)
    if rep.radius_squared is not None:
        ok = rep.radius_squared <= eps_q * eps_q
    else:
        e = float(eps_q)
        ok = rep.radius_achieved <= e + FLOAT_TOL * max(1.0, e)
    return CoverReport(ok, rep.radius_achieved, rep.worst_target, float(eps_q), rep.radius_squared)


@dataclass(frozen=True)
class RegionA:
    polygon: tuple[ExactPoint, ...]

    def __post_init__(self):
        poly = tuple(as_point(p) for p in self.polygon)
        object.__setattr__(self, "polygon", poly)
        if len(poly) < 3 or polygon_area2(poly) <= 0 or convex_hull(poly) != list(poly):
            raise ValueError("region must be a counterclockwise convex polygon with positive area")

    @property
    def area(self) -> Fraction:
        return polygon_area2(self.polygon) / 2

    def diameter(self) -> float:
        pts = self.polygon
        return max(math.dist(p.to_float(), q.to_float()) for p in pts for q in pts)

    def contains(self, p, strict: bool = False) -> bool:
        return point_in_convex_polygon(as_point(p), self.polygon, strict)


def region_A(P: Iterable) -> RegionA:
    """Convex hull of the first-round crossings of five points in convex position."""
    P = P if isinstance(P, PointSet) else PointSet(P)
    if len(P) != 5 or not in_convex_position(P):
        raise NotFiveConvex("region A needs exactly five points in convex position")
    crossings = intersection_closure(P) - P
    return RegionA(tuple(convex_hull(crossings)))


def sample_region(region: RegionA, h: Number) -> list[ExactPoint]:
    """Exact sample points of a region: strict-interior grid points plus boundary points.

    The grid has pitch ``h`` and is anchored at the origin. Each polygon edge
    of length L is split into ceil(L / h) equal pieces, so vertices are
    always sampled.
    """
    h = decimal_rational(h)
    if h <= 0:
        raise ValueError("grid pitch must be positive")
    poly = region.polygon
    out: list[ExactPoint] = []
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        length = math.dist(a.to_float(), b.to_float())
        m = max(1, math.ceil(length / float(h) - 1e-12))
        for s in range(m):
            f = Fraction(s, m)
            out.append(ExactPoint(a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)))
    xs = [p.x for p in poly]
    ys = [p.y for p in poly]
    i0, i1 = math.ceil(min(xs) / h), math.floor(max(xs) / h)
    j0, j1 = math.ceil(min(ys) / h), math.floor(max(ys) / h)
    for i in range(i0, i1 + 1):
        for j in range(j0, j1 + 1):
            p = ExactPoint(i * h, j * h)
            if point_in_convex_polygon(p, poly, strict=True):
                out.append(p)
    return out


@dataclass
class DensityProfile:
    region: Optional[RegionA]
    pitch: Optional[Fraction]
    entries: list[tuple[int, float]] = field(default_factory=list)
    sizes: list[int] = field(default_factory=list)
    stop_reason: str = "k_max"
    samples: int = 0

    @property
    def radii(self) -> list[float]:
        return [r for _, r in self.entries]


def density_profile(
    P: Iterable,
    k_max: int,
    h: Optional[Number] = None,
    budgets: Optional[ClosureBudgets] = None,
    *,
    workers: int = 1,
    keep_rounds: bool = False,
):
    """Cover radius of region A under P^1..P^k_max.

    ``h`` defaults to diam(A) / 50. If the closure iteration stops on a
    budget, the profile ends there and ``stop_reason`` names the budget.
    With ``keep_rounds`` the computed rounds are returned as well.
    """
    P = P if isinstance(P, PointSet) else PointSet(P)
    region = region_A(P)
    if k_max <= 0:
        prof = DensityProfile(region, None, stop_reason="k_max")
        return (prof, [P]) if keep_rounds else prof
    pitch = decimal_rational(h) if h is not None else decimal_rational(region.diameter() / 50)
    samples = sample_region(region, pitch)
    budgets = budgets or ClosureBudgets()
    rounds_budget = ClosureBudgets(budgets.max_points, k_max, budgets.max_coordinate_bits)
    it = iterate(P, ClosureMode.SEGMENTS, rounds_budget, workers=workers)
    prof = DensityProfile(region, pitch, samples=len(samples))
    for k in range(1, len(it.rounds)):
        prof.entries.append((k, cover_radius(it.rounds[k], samples).radius_achieved))
        prof.sizes.append(len(it.rounds[k]))
    if it.stop_reason == "fixed_point":
        # P^k no longer changes, so neither does its radius
        last = prof.entries[-1][1] if prof.entries else cover_radius(P, samples).radius_achieved
        for k in range(len(it.rounds), k_max + 1):
            prof.entries.append((k, last))
            prof.sizes.append(len(it.last))
        prof.stop_reason = "fixed_point"
    elif it.stop_reason != "max_rounds":
        prof.stop_reason = it.stop_reason
    return (prof, it.rounds) if keep_rounds else prof
