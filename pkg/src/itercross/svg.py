"""Minimal deterministic SVG output for point sets, graphs and certificate sketches."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .certificate import CertificateParams, CertificateReport, check_certificate


def _fmt(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


@dataclass
class Canvas:
    """Maps a world-coordinate box onto an SVG viewport (y axis up)."""

    xmin: float
    ymin: float
    xmax: float
    ymax: float
    size: int = 800
    pad: int = 20
    items: list[str] = field(default_factory=list)

    @classmethod
    def fit(cls, pts: Iterable[Sequence[float]], size: int = 800) -> "Canvas":
        pts = list(pts)
        xs = [p[0] for p in pts] or [0.0]
        ys = [p[1] for p in pts] or [0.0]
        return cls(min(xs), min(ys), max(xs), max(ys), size)

    @property
    def scale(self) -> float:
        span = max(self.xmax - self.xmin, self.ymax - self.ymin) or 1.0
        return (self.size - 2 * self.pad) / span

    def map(self, x: float, y: float) -> tuple[str, str]:
        s = self.scale
        return _fmt(self.pad + (x - self.xmin) * s), _fmt(self.size - self.pad - (y - self.ymin) * s)

    def point(self, p, r: float = 2.0, fill: str = "black"):
        cx, cy = self.map(float(p[0]), float(p[1]))
        self.items.append(f'<circle cx="{cx}" cy="{cy}" r="{_fmt(r)}" fill="{fill}"/>')

    def line(self, p, q, stroke: str = "black", width: float = 1.0, dash: Optional[str] = None):
        x1, y1 = self.map(float(p[0]), float(p[1]))
        x2, y2 = self.map(float(q[0]), float(q[1]))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                          f'stroke="{stroke}" stroke-width="{_fmt(width)}"{extra}/>')

    def polygon(self, pts, fill: str = "none", stroke: str = "black", opacity: float = 1.0):
        coords = " ".join(",".join(self.map(float(p[0]), float(p[1]))) for p in pts)
        self.items.append(f'<polygon points="{coords}" fill="{fill}" stroke="{stroke}" '
                          f'fill-opacity="{_fmt(opacity)}"/>')

    def text(self, x: float, y: float, label: str, size: int = 12):
        tx, ty = self.map(x, y)
        self.items.append(f'<text x="{tx}" y="{ty}" font-size="{size}">{label}</text>')

    def render(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.size}" height="{self.size}" '
                f'viewBox="0 0 {self.size} {self.size}">')
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *self.items, "</svg>"]) + "\n"


def render_points(points, edges: Iterable[tuple[int, int]] = (), region=None,
                  size: int = 800, radius: float = 2.0) -> str:
    pts = [(float(p[0]), float(p[1])) for p in points]
    world = pts + ([p.to_float() for p in region] if region else [])
    c = Canvas.fit(world, size)
    if region:
        c.polygon(region, fill="#9ecae1", stroke="#3182bd", opacity=0.5)
    for i, j in sorted(edges):
        c.line(pts[i], pts[j], stroke="#555555")
    for p in pts:
        c.point(p, radius)
    return c.render()


def render_certificate(params: CertificateParams, size: int = 800,
                       report: Optional[CertificateReport] = None) -> str:
    """Sketch of the two squares, the eps boxes, one wedge and its strips.

    The outer square has side A + a and the inner one side A - a, both centred
    at the origin. The wedge is drawn at the midpoint of the inner bottom edge.
    """
    rep = report or check_certificate(params)
    a, A, e = params.a, params.A, params.eps
    ho, hi = (A + a) / 2, (A - a) / 2
    c = Canvas(-ho - 2 * e, -ho - 2 * e, ho + 2 * e, ho + 2 * e, size)
    c.polygon([(-ho, -ho), (ho, -ho), (ho, ho), (-ho, ho)], stroke="#333333")
    c.polygon([(-hi, -hi), (hi, -hi), (hi, hi), (-hi, hi)], stroke="#3182bd")
    # eps boxes around the bottom point w and the top point t
    for cx, cy in ((0.0, -ho), (0.0, ho)):
        c.polygon([(cx - e, cy - e), (cx + e, cy - e), (cx + e, cy + e), (cx - e, cy + e)],
                  fill="#fdae6b", stroke="#e6550d", opacity=0.4)
    v = (0.0, -hi)
    if math.isfinite(rep.xi):
        span = A + a
        dx = span / math.tan(rep.xi)
        p = (-e, -ho)
        for shift in (0.0, rep.l):
            c.line((p[0] + shift, p[1]), (p[0] + shift + dx, p[1] + span), stroke="#31a354")
            if rep.b > 0:
                off = rep.b / math.sin(rep.xi)
                for sgn in (-1, 1):
                    c.line((p[0] + shift + sgn * off, p[1]), (p[0] + shift + sgn * off + dx, p[1] + span),
                           stroke="#a1d99b", dash="4,3")
        c.line((v[0] - rep.l, v[1]), (v[0] + rep.l, v[1]), stroke="#de2d26", width=2.0)
    if math.isfinite(rep.D):
        for sx, sy in ((-hi, -hi), (hi, -hi), (hi, hi), (-hi, hi)):
            corner = [(sx + rep.D * math.cos(t), sy + rep.D * math.sin(t))
                      for t in (2 * math.pi * k / 24 for k in range(24))]
            c.polygon(corner, stroke="#de2d26", fill="#de2d26", opacity=0.2)
    c.point(v, 3.0, fill="#de2d26")
    status = "pass" if rep.passed else "fail"
    c.text(-ho, ho + e, f"a={a:g} A={A:g} eps={e:g} delta={params.delta:.8g} ({status})")
    return c.render()
