"""Iterated crossing-point closures of finite point sets.

One closure round adds every point where two non-parallel connecting
segments (or, in line mode, two supporting lines) meet. The inner loops run
on integer homogeneous coordinates; results are converted back to exact
rational points, so the output is identical to a naive Fraction computation.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .geometry import ExactPoint, PointSet


class ClosureMode(str, enum.Enum):
    SEGMENTS = "segments"
    LINES = "lines"


@dataclass(frozen=True)
class ClosureBudgets:
    max_points: int = 100_000
    max_rounds: int = 6
    max_coordinate_bits: int = 4096

    def __post_init__(self):
        for name in ("max_points", "max_rounds", "max_coordinate_bits"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


class PointBudgetExceeded(Exception):
    """Raised internally when a round grows past ``max_points``."""


# Homogeneous integer coordinates (X, Y, W), W > 0, gcd 1.

def _homogeneous(p: ExactPoint) -> tuple[int, int, int]:
    x, y = p
    X = x.numerator * y.denominator
    Y = y.numerator * x.denominator
    W = x.denominator * y.denominator
    g = math.gcd(X, Y, W)
    return X // g, Y // g, W // g


def _line(a, b) -> tuple[int, int, int]:
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def _meet(l1, l2) -> Optional[tuple[int, int, int]]:
    X = l1[1] * l2[2] - l1[2] * l2[1]
    Y = l1[2] * l2[0] - l1[0] * l2[2]
    W = l1[0] * l2[1] - l1[1] * l2[0]
    if W == 0:
        return None
    if W < 0:
        X, Y, W = -X, -Y, -W
    g = math.gcd(X, Y, W)
    return X // g, Y // g, W // g


def _unrank(n: int, r: int) -> tuple[int, int]:
    """The r-th pair (i, j), i < j, ordered by decreasing gap j - i, then by i.

    Points are sorted, so wide pairs are long segments; these produce many
    crossings early, which lets a point budget trip without a full pass.
    """
    g = n - 1
    while r >= n - g:
        r -= n - g
        g -= 1
    return r, r + g


def _next_pair(n: int, i: int, j: int) -> tuple[int, int]:
    g = j - i
    return (i + 1, j + 1) if j + 1 < n else (0, g - 1)


def _segment_crossings(pts, lo: int, hi: int, limit: Optional[int]) -> set:
    """Proper crossings between segment ranks [lo, hi) and every later segment.

    Segments are index pairs into ``pts`` and are never materialized. Segment
    (i, j) owns the pairs (k, l) with i < k < l, so every pair of segments is
    tested exactly once whatever order the ranks run in. A segment sharing
    an endpoint cannot cross properly, so nothing is lost.
    Crossings at an endpoint are input points and are skipped.
    """
    out = set()
    n = len(pts)
    i, j = _unrank(n, lo)
    for _ in range(lo, hi):
        a, b = pts[i], pts[j]
        l1 = _line(a, b)
        p0, p1, p2 = l1
        pos, neg = [], []
        for k in range(i + 1, n):
            c = pts[k]
            o = p0 * c[0] + p1 * c[1] + p2 * c[2]
            if o > 0:
                pos.append(c)
            elif o < 0:
                neg.append(c)
        # each unordered later segment with ends on opposite sides, exactly once
        for c in pos:
            for d in neg:
                l2 = _line(c, d)
                q0, q1, q2 = l2
                o3 = q0 * a[0] + q1 * a[1] + q2 * a[2]
                if o3 == 0:
                    continue
                o4 = q0 * b[0] + q1 * b[1] + q2 * b[2]
                if o4 == 0 or (o3 > 0) == (o4 > 0):
                    continue
                out.add(_meet(l1, l2))
            if limit is not None and len(out) > limit:
                raise PointBudgetExceeded(len(out))
        i, j = _next_pair(n, i, j)
    return out


def _line_crossings(pts, lo: int, hi: int, limit: Optional[int]) -> set:
    # Same ownership rule as for segments: lines through a shared input point
    # meet there (already in P) or coincide; parallel lines meet nowhere.
    out = set()
    n = len(pts)
    i, j = _unrank(n, lo)
    for _ in range(lo, hi):
        l1 = _line(pts[i], pts[j])
        for k in range(i + 1, n):
            c = pts[k]
            for m in range(k + 1, n):
                hit = _meet(l1, _line(c, pts[m]))
                if hit is not None:
                    out.add(hit)
            if limit is not None and len(out) > limit:
                raise PointBudgetExceeded(len(out))
        i, j = _next_pair(n, i, j)
    return out


def _chunk_job(args):
    kind, pts, lo, hi, limit = args
    if lo >= hi:
        return set()
    fn = _segment_crossings if kind == ClosureMode.SEGMENTS else _line_crossings
    return fn(pts, lo, hi, limit)


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    # Early ranks carry more work; many small chunks let the pool balance them.
    step = max(1, -(-total // parts))
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def intersection_closure(
    P: Union[PointSet, Iterable],
    mode: Union[ClosureMode, str] = ClosureMode.SEGMENTS,
    *,
    workers: int = 1,
    max_points: Optional[int] = None,
) -> PointSet:
    """P together with all crossing points of its connecting segments or lines.

    ``workers > 1`` spreads the pair enumeration over processes; the result
    does not depend on it. Raises :class:`PointBudgetExceeded` if the result
    would hold more than ``max_points`` points.
    """
    P = P if isinstance(P, PointSet) else PointSet(P)
    mode = ClosureMode(mode)
    homog = [_homogeneous(p) for p in P]
    n = len(homog)
    total = n * (n - 1) // 2
    limit = None if max_points is None else max_points

    if workers <= 1 or total < 64:
        found = _chunk_job((mode, homog, 0, total, limit))
    else:
        jobs = [(mode, homog, lo, hi, limit) for lo, hi in _chunks(total, workers * 8)]
        found = set()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_chunk_job, jobs):
                found |= part
                if limit is not None and len(found) > limit:
                    raise PointBudgetExceeded(len(found))

    new = frozenset(ExactPoint(Fraction(X, W), Fraction(Y, W)) for X, Y, W in found)
    result = P | new
    if max_points is not None and len(result) > max_points:
        raise PointBudgetExceeded(len(result))
    return result


@dataclass
class Iteration:
    """Rounds P^0..P^m of an iteration and why it stopped.

    ``stop_reason`` is one of ``fixed_point``, ``max_rounds``, ``max_points``
    or ``max_coordinate_bits``. For a fixed point, ``fixed_round`` is the
    round whose closure added nothing; that repeated set is not stored again.
    """

    rounds: list[PointSet]
    stop_reason: str
    mode: ClosureMode = ClosureMode.SEGMENTS
    fixed_round: Optional[int] = None
    sizes: list[int] = field(init=False)

    def __post_init__(self):
        self.sizes = [len(r) for r in self.rounds]

    @property
    def last(self) -> PointSet:
        return self.rounds[-1]

    def __len__(self) -> int:
        return len(self.rounds)

    def __getitem__(self, k: int) -> PointSet:
        return self.rounds[k]


def iterate(
    P: Union[PointSet, Iterable],
    mode: Union[ClosureMode, str] = ClosureMode.SEGMENTS,
    budgets: Optional[ClosureBudgets] = None,
    *,
    workers: int = 1,
) -> Iteration:
    budgets = budgets or ClosureBudgets()
    P = P if isinstance(P, PointSet) else PointSet(P)
    if len(P) < 2:
        raise ValueError("need at least two points")
    mode = ClosureMode(mode)
    rounds = [P]
    for k in range(1, budgets.max_rounds + 1):
        try:
            nxt = intersection_closure(rounds[-1], mode, workers=workers,
                                       max_points=budgets.max_points)
        except PointBudgetExceeded:
            return Iteration(rounds, "max_points", mode)
        if nxt == rounds[-1]:
            return Iteration(rounds, "fixed_point", mode, fixed_round=k)
        if nxt.max_bits() > budgets.max_coordinate_bits:
            return Iteration(rounds, "max_coordinate_bits", mode)
        rounds.append(nxt)
    return Iteration(rounds, "max_rounds", mode)


@dataclass(frozen=True)
class Stable:
    points: PointSet

    def __str__(self) -> str:
        return "Stable"


@dataclass(frozen=True)
class StabilizesAtRound:
    k: int
    fixed_point: PointSet

    def __str__(self) -> str:
        return f"StabilizesAtRound({self.k})"


@dataclass(frozen=True)
class BudgetExceeded:
    last_round: int
    last_size: int
    reason: str = "max_rounds"

    def __str__(self) -> str:
        return f"BudgetExceeded(last_round={self.last_round}, last_size={self.last_size}, reason={self.reason})"


StabilityVerdict = Union[Stable, StabilizesAtRound, BudgetExceeded]


def classify_stability(
    P: Union[PointSet, Iterable],
    budgets: Optional[ClosureBudgets] = None,
    mode: Union[ClosureMode, str] = ClosureMode.SEGMENTS,
    *,
    workers: int = 1,
) -> StabilityVerdict:
    """Operational stability check.

    ``BudgetExceeded`` only means no fixed point turned up within the
    budgets; it is not a proof that the set fails to stabilize.
    """
    it = iterate(P, mode, budgets, workers=workers)
    if it.stop_reason == "fixed_point":
        if len(it.rounds) == 1:
            return Stable(it.last)
        return StabilizesAtRound(len(it.rounds) - 1, it.last)
    return BudgetExceeded(len(it.rounds) - 1, len(it.last), it.stop_reason)
