"""Text grids and SVG pictures.

Geometry is exact up to the moment a coordinate is written out; every number
in an SVG is printed with six decimals, so equal inputs give equal bytes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .farey import FareyPath, Horocycle, Vertex
from .friezes import Frieze
from .hypertilings import Hypertiling
from .tilings import Tiling

COLOURS = ("#c0392b", "#2471a3", "#1e8449", "#b9770e", "#7d3c98")


def _fmt(x) -> str:
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return str(int(x)) if isinstance(x, Fraction) else str(x)


def _grid(rows: Sequence[Sequence[str]]) -> list[str]:
    w = max((len(s) for r in rows for s in r), default=1)
    return [" ".join(s.rjust(w) for s in r) for r in rows]


def ascii_tiling(t: Tiling) -> str:
    return "\n".join(_grid([[_fmt(x) for x in r] for r in t.entries])) + "\n"


def ascii_hypertiling(h: Hypertiling) -> str:
    """Layers k side by side (rows i, columns j), separated by '|'."""
    I, Jr, K = h.ranges
    w = max(len(str(x)) for sl in h.entries for r in sl for x in r)
    lines = []
    for i in I:
        parts = [" ".join(str(h[i, j, k]).rjust(w) for j in Jr) for k in K]
        lines.append(" | ".join(parts))
    return "\n".join(lines) + "\n"


def ascii_frieze(f: Frieze) -> str:
    """Rows of the frieze, each shifted half a cell from the previous one."""
    n = f.width
    cells = [[_fmt(Fraction(x, f.denom)) for x in r] for r in f.rows]
    w = max(len(s) for r in cells for s in r) + 1
    reps = 2
    lines = []
    for k, r in enumerate(cells):
        seq = [r[j % n] for j in range(reps * n)]
        pad = " " * ((k * (w + 1)) // 2)
        lines.append((pad + " ".join(s.rjust(w) for s in seq)).rstrip())
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RenderSpec:
    model: str = "upper-half-plane"  # or "disc"
    x_min: Fraction = Fraction(-5)
    x_max: Fraction = Fraction(5)
    size: int = 800
    depth: int = 12
    horocycles: bool = False
    labels: bool = False

    def __post_init__(self) -> None:
        if self.model not in ("upper-half-plane", "disc"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.size <= 0 or self.depth < 1 or not self.x_min < self.x_max:
            raise ValueError("render dimensions must be positive")


def _n(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def farey_edges(lo: int, hi: int, depth: int) -> list[tuple[Vertex, Vertex]]:
    """Classical Farey edges: integers to infinity, plus edges inside [n, n+1] with denominators <= depth."""
    edges: list[tuple[Vertex, Vertex]] = []
    for n in range(lo, hi + 1):
        edges.append(((n, 1), (1, 0)))
        if n < hi:
            stack = [((n, 1), (n + 1, 1))]
            while stack:
                l, r = stack.pop()
                edges.append((l, r))
                m = (l[0] + r[0], l[1] + r[1])
                if m[1] <= depth:
                    stack += [(l, m), (m, r)]
    return sorted(set(edges))


def disc_edges(depth: int) -> list[tuple[Vertex, Vertex]]:
    """Farey edges reachable from the triangle (1/0, 0/1, 1/1), (1/0, 0/1, -1/1) with entries <= depth."""
    edges = set()
    stack = [((1, 0), (0, 1)), ((0, 1), (-1, 0))]
    while stack:
        l, r = stack.pop()
        edges.add((l, r))
        m = (l[0] + r[0], l[1] + r[1])
        if max(abs(m[0]), abs(m[1])) <= depth:
            stack += [(l, m), (m, r)]
    return sorted(edges)


class _Canvas:
    def __init__(self, spec: RenderSpec):
        self.spec = spec
        self.size = spec.size
        self.margin = 0.04 * spec.size
        if spec.model == "upper-half-plane":
            self.scale = (self.size - 2 * self.margin) / float(spec.x_max - spec.x_min)
            self.height = self.size // 2
            self.base_y = self.height - self.margin
        else:
            self.radius = self.size / 2 - self.margin
            self.height = self.size
        self.items: list[str] = []

    # coordinates
    def hp(self, x: float, y: float) -> tuple[float, float]:
        return self.margin + (x - float(self.spec.x_min)) * self.scale, self.base_y - y * self.scale

    def disc(self, z: complex) -> tuple[float, float]:
        c = self.size / 2
        return c + self.radius * z.real, c - self.radius * z.imag

    @staticmethod
    def cayley(v: Vertex) -> complex:
        a, b = v
        if b == 0:
            return complex(1, 0)
        x = a / b
        return (complex(x, -1)) / (complex(x, 1))

    def arc(self, p: tuple[float, float], q: tuple[float, float], r: float, centre: tuple[float, float], style: str,
            sweep: Optional[int] = None) -> None:
        if sweep is None:
            v1 = (p[0] - centre[0], p[1] - centre[1])
            v2 = (q[0] - centre[0], q[1] - centre[1])
            sweep = 1 if v1[0] * v2[1] - v1[1] * v2[0] > 0 else 0
        self.items.append(
            f'<path d="M {_n(p[0])} {_n(p[1])} A {_n(r)} {_n(r)} 0 0 {sweep} {_n(q[0])} {_n(q[1])}" {style}/>'
        )

    def line(self, p: tuple[float, float], q: tuple[float, float], style: str) -> None:
        self.items.append(f'<line x1="{_n(p[0])}" y1="{_n(p[1])}" x2="{_n(q[0])}" y2="{_n(q[1])}" {style}/>')

    def geodesic(self, u: Vertex, v: Vertex, style: str) -> None:
        if self.spec.model == "upper-half-plane":
            if u[1] == 0 or v[1] == 0:
                a, b = v if u[1] == 0 else u
                x = a / b
                self.line(self.hp(x, 0), self.hp(x, float(self.spec.x_max - self.spec.x_min)), style)
                return
            x1, x2 = sorted((u[0] / u[1], v[0] / v[1]))
            p, q = self.hp(x1, 0), self.hp(x2, 0)
            r = (q[0] - p[0]) / 2
            if r <= 0:
                return
            # left to right over the top is clockwise on screen
            self.arc(p, q, r, ((p[0] + q[0]) / 2, p[1]), style, sweep=1)
            return
        z1, z2 = self.cayley(u), self.cayley(v)
        p, q = self.disc(z1), self.disc(z2)
        half = abs(cmath.phase(z2 / z1)) / 2
        if half < 1e-12:
            return
        if abs(half - math.pi / 2) < 1e-9:
            self.line(p, q, style)
            return
        mid = (z1 + z2) / abs(z1 + z2)
        centre = self.disc(mid / math.cos(half))
        self.arc(p, q, self.radius * math.tan(half), centre, style)

    def horocycle(self, h: Horocycle, style: str) -> None:
        a, b = h.vertex
        size = float(h.size)
        if self.spec.model == "upper-half-plane":
            if b == 0:
                self.line(self.hp(float(self.spec.x_min), size), self.hp(float(self.spec.x_max), size), style)
                return
            x = a / b
            cx, cy = self.hp(x, size / 2)
            self._circle(cx, cy, size / 2 * self.scale, style)
            return
        zeta = self.cayley((a, b))
        w = complex(0, size) if b == 0 else complex(a / b, size)
        w = (w - 1j) / (w + 1j)
        rho = abs(w - zeta) ** 2 / (2 * (1 - (w * zeta.conjugate()).real))
        cx, cy = self.disc((1 - rho) * zeta)
        self._circle(cx, cy, rho * self.radius, style)

    def _circle(self, cx: float, cy: float, r: float, style: str) -> None:
        self.items.append(f'<circle cx="{_n(cx)}" cy="{_n(cy)}" r="{_n(r)}" {style}/>')

    def label(self, v: Vertex) -> None:
        a, b = v
        text = "&#8734;" if b == 0 else f"{a * (1 if b > 0 else -1)}/{abs(b)}"
        if self.spec.model == "upper-half-plane":
            if b == 0:
                return
            x, y = self.hp(a / b, 0)
            y += 0.6 * self.margin
        else:
            z = self.cayley(v) * (1 + 0.5 * self.margin / self.radius)
            x, y = self.disc(z)
        self.items.append(f'<text x="{_n(x)}" y="{_n(y)}" font-size="10" text-anchor="middle">{text}</text>')

    def document(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.size}" height="{self.height}" '
                f'viewBox="0 0 {self.size} {self.height}">')
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *self.items, "</svg>"]) + "\n"


def render_farey_svg(paths: Sequence[FareyPath], spec: Optional[RenderSpec] = None) -> str:
    """The classical Farey tessellation with the given paths drawn on top."""
    spec = spec or RenderSpec()
    cv = _Canvas(spec)
    thin = 'fill="none" stroke="#999999" stroke-width="0.6"'
    if spec.model == "upper-half-plane":
        cv.line(cv.hp(float(spec.x_min), 0), cv.hp(float(spec.x_max), 0), 'stroke="black" stroke-width="1"')
        edges = farey_edges(math.floor(spec.x_min), math.ceil(spec.x_max), spec.depth)
    else:
        cv._circle(spec.size / 2, spec.size / 2, cv.radius, 'fill="none" stroke="black" stroke-width="1"')
        edges = disc_edges(spec.depth)
    for u, v in edges:
        cv.geodesic(u, v, thin)
    for n, path in enumerate(paths):
        colour = COLOURS[n % len(COLOURS)]
        style = f'fill="none" stroke="{colour}" stroke-width="2.5"'
        for u, v in zip(path.vertices, path.vertices[1:]):
            cv.geodesic(u, v, style)
        if spec.horocycles:
            for v in path.vertices:
                cv.horocycle(Horocycle(v), f'fill="none" stroke="{colour}" stroke-width="1"')
        if spec.labels:
            for v in path.vertices:
                cv.label(v)
    return cv.document()
