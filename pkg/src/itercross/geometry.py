"""Exact rational points, segments and the predicates built on them.

Coordinates are :class:`fractions.Fraction` values, so equality and ordering
of points are exact. Every other module relies on that to deduplicate
crossing points that coincide.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional, Union

Number = Union[int, Fraction, float, str]


class BudgetError(ValueError):
    """A combinatorial search would exceed its configured cap."""


def as_rational(value: Number) -> Fraction:
    """Convert ``value`` to a Fraction.

    Strings are read as decimal literals or ``p/q``; floats keep their exact
    binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def decimal_rational(value: Number) -> Fraction:
    """Like :func:`as_rational`, but floats are read through their shortest repr.

    ``decimal_rational(0.16) == Fraction(4, 25)``; use this for user-supplied
    tolerances and step sizes, where the decimal the user typed is what counts.
    """
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"not a finite number: {value!r}")
        return Fraction(repr(value))
    return as_rational(value)


class ExactPoint(NamedTuple):
    x: Fraction
    y: Fraction

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"

    def to_float(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


def point(x: Number, y: Number) -> ExactPoint:
    return ExactPoint(as_rational(x), as_rational(y))


def as_point(p) -> ExactPoint:
    if isinstance(p, ExactPoint) and type(p.x) is Fraction and type(p.y) is Fraction:
        return p
    x, y = p
    return point(x, y)


@dataclass(frozen=True)
class Segment:
    a: ExactPoint
    b: ExactPoint

    def __post_init__(self):
        object.__setattr__(self, "a", as_point(self.a))
        object.__setattr__(self, "b", as_point(self.b))
        if self.a == self.b:
            raise ValueError(f"degenerate segment at {self.a}")

    def __iter__(self):
        yield self.a
        yield self.b


class PointSet:
    """Immutable, duplicate-free set of exact points in lexicographic order."""

    __slots__ = ("_points", "_members")

    def __init__(self, points: Iterable = ()):
        members = frozenset(as_point(p) for p in points)
        self._members = members
        self._points = tuple(sorted(members))

    @classmethod
    def _from_members(cls, members: frozenset) -> "PointSet":
        ps = cls.__new__(cls)
        ps._members = members
        ps._points = tuple(sorted(members))
        return ps

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[ExactPoint]:
        return iter(self._points)

    def __getitem__(self, i):
        return self._points[i]

    def __contains__(self, p) -> bool:
        return as_point(p) in self._members

    def __eq__(self, other) -> bool:
        if isinstance(other, PointSet):
            return self._members == other._members
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._members)

    def __le__(self, other: "PointSet") -> bool:
        return self._members <= other._members

    def __or__(self, other: Iterable) -> "PointSet":
        extra = other._members if isinstance(other, PointSet) else frozenset(map(as_point, other))
        return PointSet._from_members(self._members | extra)

    def __sub__(self, other: Iterable) -> "PointSet":
        drop = other._members if isinstance(other, PointSet) else frozenset(map(as_point, other))
        return PointSet._from_members(self._members - drop)

    def issubset(self, other: "PointSet") -> bool:
        return self <= other

    @property
    def points(self) -> tuple[ExactPoint, ...]:
        return self._points

    def max_bits(self) -> int:
        """Largest bit length among all numerators and denominators."""
        best = 0
        for p in self._points:
            for c in p:
                best = max(best, c.numerator.bit_length(), c.denominator.bit_length())
        return best

    def __repr__(self) -> str:
        if len(self) <= 6:
            return f"PointSet([{', '.join(map(str, self._points))}])"
        return f"PointSet(<{len(self)} points>)"


def cross(o, a, b) -> Fraction:
    """Cross product (a - o) x (b - o)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orientation(p, q, r) -> int:
    """Sign of (q - p) x (r - p): +1 counterclockwise, -1 clockwise, 0 collinear."""
    c = cross(p, q, r)
    return (c > 0) - (c < 0)


def on_closed_segment(t, a, b) -> bool:
    if cross(a, b, t) != 0:
        return False
    return min(a[0], b[0]) <= t[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= t[1] <= max(a[1], b[1])


def segment_intersection(s1, s2) -> Optional[ExactPoint]:
    """Single common point of two closed segments, or None.

    Parallel pairs, collinear overlapping ones included, give None.
    """
    a, b = (as_point(p) for p in s1)
    c, d = (as_point(p) for p in s2)
    rx, ry = b.x - a.x, b.y - a.y
    sx, sy = d.x - c.x, d.y - c.y
    den = rx * sy - ry * sx
    if den == 0:
        return None
    qx, qy = c.x - a.x, c.y - a.y
    t = (qx * sy - qy * sx) / den
    u = (qx * ry - qy * rx) / den
    if not (0 <= t <= 1 and 0 <= u <= 1):
        return None
    return ExactPoint(a.x + t * rx, a.y + t * ry)


def convex_hull(points: Iterable) -> list[ExactPoint]:
    """Hull vertices counterclockwise from the lexicographically smallest point.

    Collinear boundary points are dropped; collinear input yields its two
    extreme points.
    """
    pts = sorted({as_point(p) for p in points})
    if len(pts) <= 2:
        return pts

    def chain(seq):
        out: list[ExactPoint] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    return lower[:-1] + upper[:-1]


def polygon_area2(polygon) -> Fraction:
    """Twice the signed area of a polygon given as a vertex sequence."""
    total = Fraction(0)
    n = len(polygon)
    for i in range(n):
        x0, y0 = polygon[i]
        x1, y1 = polygon[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return total


def in_convex_position(points: Iterable) -> bool:
    pts = PointSet(points)
    return len(convex_hull(pts)) == len(pts)


def _integer_grid(pts) -> list[tuple[int, int]]:
    scale = 1
    for p in pts:
        for c in p:
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
    return [(int(p.x * scale), int(p.y * scale)) for p in pts]


def _icross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _in_triangle(p, a, b, c) -> bool:
    s1, s2, s3 = _icross(a, b, p), _icross(b, c, p), _icross(c, a, p)
    return (s1 >= 0 and s2 >= 0 and s3 >= 0) or (s1 <= 0 and s2 <= 0 and s3 <= 0)


def _extends_convex(chosen: list, q) -> bool:
    """Whether ``chosen + [q]`` stays in convex position, given ``chosen`` is.

    A set is in convex position iff no three points are collinear and every
    four are in convex position, so only subsets containing q need checking.
    """
    for a, b in itertools.combinations(chosen, 2):
        if _icross(a, b, q) == 0:
            return False
    for a, b, c in itertools.combinations(chosen, 3):
        if (_in_triangle(q, a, b, c) or _in_triangle(a, b, c, q)
                or _in_triangle(b, a, c, q) or _in_triangle(c, a, b, q)):
            return False
    return True


def contains_five_convex(points: Iterable, cap: Optional[int] = 60) -> Optional[PointSet]:
    """Some five points of ``points`` in convex position, or None.

    The search is exhaustive over 5-subsets, taken in order of the largest
    canonical index they use, so it stops inside the smallest prefix that
    holds a convex pentagon. Partial subsets that already fail are pruned.
    ``BudgetError`` is raised when the search would need a prefix longer
    than ``cap`` points.
    """
    pts = PointSet(points).points
    if len(pts) < 5:
        return None
    hull = convex_hull(pts)
    if len(hull) >= 5:
        return PointSet(hull[:5])
    grid = _integer_grid(pts)

    def extend(chosen: list[int], below: int) -> Optional[list[int]]:
        if len(chosen) == 5:
            return chosen
        for i in range(below - 1, -1, -1):
            if _extends_convex([grid[k] for k in chosen], grid[i]):
                found = extend(chosen + [i], i)
                if found:
                    return found
        return None

    for last in range(4, len(pts)):
        if cap is not None and last + 1 > cap:
            raise BudgetError(
                f"five-convex search needs more than {cap} points (set has {len(pts)})"
            )
        found = extend([last], last)
        if found:
            return PointSet(pts[k] for k in found)
    return None


def point_in_convex_polygon(p, polygon, strict: bool = False) -> bool:
    """Exact containment test for a counterclockwise convex polygon."""
    n = len(polygon)
    for i in range(n):
        o = cross(polygon[i], polygon[(i + 1) % n], p)
        if o < 0 or (strict and o == 0):
            return False
    return True


def regular_polygon(n: int, radius: Number = 1, digits: int = 6, phase: float = math.pi / 2) -> PointSet:
    """Rational approximation of a regular ``n``-gon centred at the origin.

    Coordinates are rounded to ``digits`` decimals; the first vertex sits at
    angle ``phase``.
    """
    scale = 10**digits
    r = float(as_rational(radius))
    pts = []
    for i in range(n):
        ang = phase + 2 * math.pi * i / n
        pts.append(point(Fraction(round(r * math.cos(ang) * scale), scale),
                         Fraction(round(r * math.sin(ang) * scale), scale)))
    return PointSet(pts)


def distance(p, q) -> float:
    return math.hypot(float(p[0] - q[0]), float(p[1] - q[1]))


def squared_distance(p, q) -> Fraction:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy
