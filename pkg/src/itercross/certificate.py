"""Numeric checker for the square-boundary contraction certificate.

Given side parameters ``a < A``, a cover radius ``eps`` and a dilation bound
``delta``, a point set that eps-covers the boundary of the square of side
A + a and triangulates with dilation <= delta also covers the concentric
square of side A - a, to within the smaller radius (A - a)/(A + a) * eps.
The quantities below bound how far the cover can degrade in one step:

* ``l``: window on the inner edge cut out by two wedge segments,
* ``xi``: smallest angle those segments make with the edge,
* ``b``: half-width of the ellipse that contains the path along a wedge segment,
* ``D``: distance from an inner-square corner to the nearest point,
* ``b_prime``: half-width of the ellipse along an inner-square edge.

All lengths are homogeneous of degree one in (a, A, eps); ``xi`` is scale free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import ExactPoint, Number, PointSet, decimal_rational


class InvalidParams(ValueError):
    pass


class WedgeTooShallow(ValueError):
    pass


class InvalidCount(ValueError):
    pass


@dataclass(frozen=True)
class CertificateParams:
    a: float
    A: float
    eps: float
    delta: float

    def check(self, need_eps_below_a: bool = False):
        if not all(math.isfinite(v) for v in (self.a, self.A, self.eps, self.delta)):
            raise InvalidParams("parameters must be finite")
        if not 0 < self.a < self.A:
            raise InvalidParams(f"need 0 < a < A, got a={self.a}, A={self.A}")
        if self.eps <= 0:
            raise InvalidParams(f"need eps > 0, got {self.eps}")
        if self.delta < 1:
            raise InvalidParams(f"need delta >= 1, got {self.delta}")
        if need_eps_below_a and self.eps >= self.a:
            raise InvalidParams(f"need eps < a, got eps={self.eps}, a={self.a}")

    def scaled(self, s: float) -> "CertificateParams":
        return CertificateParams(self.a * s, self.A * s, self.eps * s, self.delta)

    @property
    def target(self) -> float:
        return (self.A - self.a) / (self.A + self.a) * self.eps


def _stretch(delta: float) -> float:
    # sqrt(delta^2 - 1) without cancellation near delta = 1
    return math.sqrt((delta - 1.0) * (delta + 1.0))


def wedge_window_l(p: CertificateParams) -> float:
    p.check()
    return 2 * p.eps * (p.a + 2 * p.eps) / (p.A + p.a)


def wedge_tan(p: CertificateParams) -> float:
    p.check(need_eps_below_a=True)
    a, A, e = p.a, p.A, p.eps
    return (a - e) * (A + a - 2 * e) / (e * (A + 3 * a - 2 * e))


def wedge_angle(p: CertificateParams) -> float:
    return math.atan(wedge_tan(p))


def ellipse_halfwidth_b(p: CertificateParams) -> float:
    xi = wedge_angle(p)
    return (p.A + p.a + 2 * p.eps) / math.sin(xi) * _stretch(p.delta) / 2


def corner_error_D(p: CertificateParams) -> float:
    xi = wedge_angle(p)
    if xi <= math.pi / 4:
        raise WedgeTooShallow(f"wedge angle {xi:.6g} rad is not above pi/4")
    l = wedge_window_l(p)
    b = ellipse_halfwidth_b(p)
    return (l + b / math.sin(xi)) * math.sqrt(2) / (1 - 1 / math.tan(xi))


def edge_strip_bprime(p: CertificateParams, D: float) -> float:
    p.check()
    if D < 0:
        raise InvalidParams(f"corner error must be nonnegative, got {D}")
    return (p.A - p.a + 2 * D) * _stretch(p.delta) / 2


def edge_error(l: float, xi: float, b: float, D: float, b_prime: float) -> float:
    """Conservative error for a point on an inner edge.

    The wedge strip (window l, slope angle xi, half-width b) is intersected
    with the horizontal strip around the corner-to-corner chord, widened by
    D + b'. The farthest point of that intersection is bounded by the right
    triangle with legs (l + (D + b') cot xi + b / sin xi) and (D + b').
    """
    h = D + b_prime
    return math.hypot(l + h / math.tan(xi) + b / math.sin(xi), h)


@dataclass
class CertificateReport:
    params: CertificateParams
    l: float = math.nan
    xi: float = math.nan
    tan_xi: float = math.nan
    b: float = math.nan
    D: float = math.nan
    b_prime: float = math.nan
    target: float = math.nan
    corner_margin: float = math.nan
    edge_error: float = math.nan
    edge_margin: float = math.nan
    passed: bool = False
    failures: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        p = self.params
        return {
            "a": p.a, "A": p.A, "eps": p.eps, "delta": p.delta,
            "l": self.l, "xi": self.xi, "tan_xi": self.tan_xi, "b": self.b,
            "D": self.D, "b_prime": self.b_prime, "target": self.target,
            "corner_margin": self.corner_margin, "edge_error": self.edge_error,
            "edge_margin": self.edge_margin, "passed": self.passed,
            "failures": list(self.failures),
        }


def check_certificate(p: CertificateParams) -> CertificateReport:
    """Evaluate every intermediate and decide pass/fail; never raises on bad params."""
    rep = CertificateReport(p)
    try:
        p.check()
    except InvalidParams as exc:
        rep.failures.append(str(exc))
        return rep
    rep.target = p.target
    rep.l = wedge_window_l(p)
    if not p.eps < p.a / 2:
        rep.failures.append("precondition eps < a/2 violated")
    if p.eps >= p.a:
        rep.failures.append("wedge angle undefined for eps >= a")
        return rep
    rep.tan_xi = wedge_tan(p)
    rep.xi = math.atan(rep.tan_xi)
    rep.b = ellipse_halfwidth_b(p)
    if not rep.xi > math.pi / 4:
        rep.failures.append("wedge angle xi <= pi/4")
        return rep
    rep.D = corner_error_D(p)
    rep.b_prime = edge_strip_bprime(p, rep.D)
    rep.corner_margin = rep.target - rep.D
    rep.edge_error = edge_error(rep.l, rep.xi, rep.b, rep.D, rep.b_prime)
    rep.edge_margin = rep.target - rep.edge_error
    if rep.corner_margin < 0:
        rep.failures.append("corner error D exceeds target")
    if rep.edge_margin < 0:
        rep.failures.append("edge error exceeds target")
    rep.passed = not rep.failures
    return rep


def wedge_lines(p: CertificateParams, eta: float) -> tuple[tuple[float, float], tuple[float, float]]:
    """Slope/intercept of the two wedge lines for height offset ``eta`` of p.

    Coordinates put the covered inner-edge point at the origin with the edge
    along the X axis. Line one passes through the origin.
    """
    a, A, e = p.a, p.A, p.eps
    s1 = (a - eta) / e
    den = A + 3 * a + e - 3 * eta
    s2 = (a - eta) * (A + a - e - eta) / (e * den)
    c2 = -2 * (a - eta) * (a - e - eta) / den
    return (s1, 0.0), (s2, c2)


def window_from_lines(p: CertificateParams, eta: float) -> float:
    """Distance between the crossings of the two wedge lines with the edge."""
    (s1, c1), (s2, c2) = wedge_lines(p, eta)
    return abs(-c2 / s2 - (-c1 / s1))


def square_cover_points(side: Number, n: int) -> tuple[PointSet, Fraction]:
    """``n`` points evenly spaced along a centred axis-parallel square, corners included.

    Returns the points and the cover radius perimeter / (2 n), both exact.
    """
    if n < 4 or n % 4:
        raise InvalidCount(f"point count must be a positive multiple of 4, got {n}")
    s = decimal_rational(side)
    if s <= 0:
        raise ValueError("side must be positive")
    half = s / 2
    corners = [ExactPoint(-half, -half), ExactPoint(half, -half),
               ExactPoint(half, half), ExactPoint(-half, half)]
    per_side = n // 4
    pts = []
    for c in range(4):
        a, b = corners[c], corners[(c + 1) % 4]
        for k in range(per_side):
            f = Fraction(k, per_side)
            pts.append(ExactPoint(a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)))
    return PointSet(pts), 4 * s / (2 * n)
