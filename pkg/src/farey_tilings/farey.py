"""Paths in the level-R Farey graphs and related gadgets.

A vertex is an integer pair ``(a, b)`` standing for the point ``a/b`` of the
extended real line (``b == 0`` is infinity).  ``(a, b)`` and ``(c, d)`` are
joined in the level-R graph when ``a*d - b*c == R``; edges are directed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .exact import IntMatrix, ext_gcd, gcd_all

Vertex = tuple[int, int]


class PathError(ValueError):
    """Invalid path; ``where`` is the offending vertex index when known."""

    def __init__(self, message: str, where: Optional[int] = None):
        super().__init__(message)
        self.where = where


@dataclass(frozen=True)
class Violation:
    where: tuple
    expected: object
    got: object
    message: str = ""

    def __str__(self) -> str:
        return f"{self.message} at {self.where}: expected {self.expected}, got {self.got}"


def cross(u: Vertex, v: Vertex) -> int:
    return u[0] * v[1] - u[1] * v[0]


def validate_path(level: int, vertices: Sequence[Vertex], base: int = 0) -> Optional[Violation]:
    if not isinstance(level, int) or level <= 0:
        return Violation((), "positive integer level", level, "bad level")
    if len(vertices) < 2:
        return Violation((), ">= 2 vertices", len(vertices), "path too short")
    for i in range(1, len(vertices)):
        d = cross(vertices[i - 1], vertices[i])
        if d != level:
            return Violation((base + i - 1, base + i), level, d, "not an edge")
    return None


@dataclass(frozen=True)
class FareyPath:
    """Vertices ``v[base], v[base+1], ...`` of a path in the level-R Farey graph."""

    level: int
    vertices: tuple[Vertex, ...]
    base: int = 0

    def __post_init__(self) -> None:
        vs = tuple((int(a), int(b)) for a, b in self.vertices)
        object.__setattr__(self, "vertices", vs)
        bad = validate_path(self.level, vs, self.base)
        if bad is not None:
            where = bad.where[-1] if bad.where else None
            raise PathError(str(bad), where)

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int) -> Vertex:
        """Vertex with path index ``i`` (not list position)."""
        j = i - self.base
        if not 0 <= j < len(self.vertices):
            raise IndexError(i)
        return self.vertices[j]

    @property
    def indices(self) -> range:
        return range(self.base, self.base + len(self.vertices))

    @property
    def first(self) -> Vertex:
        return self.vertices[0]

    @property
    def last(self) -> Vertex:
        return self.vertices[-1]

    def act(self, X: Sequence[Sequence[int]]) -> FareyPath:
        """Apply an integer matrix to every vertex (as column vectors)."""
        (p, q), (r, s) = X
        D = p * s - q * r
        level = self.level * D
        vs = tuple((p * a + q * b, r * a + s * b) for a, b in self.vertices)
        if level < 0:
            raise PathError("matrix reverses orientation")
        return FareyPath(level, vs, self.base)

    def __neg__(self) -> FareyPath:
        return FareyPath(self.level, tuple((-a, -b) for a, b in self.vertices), self.base)

    def scale_first(self, L: int) -> FareyPath:
        """The path with vertices ``(L a, b)``, which lies in level ``L R``.

        Negative L would reverse every edge, so only L > 0 is accepted.
        """
        if L <= 0:
            raise ValueError("L must be positive")
        return FareyPath(L * self.level, tuple((L * a, b) for a, b in self.vertices), self.base)

    def shifted(self, base: int) -> FareyPath:
        return FareyPath(self.level, self.vertices, base)

    def to_dict(self) -> dict:
        return {"level": self.level, "base": self.base, "vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_dict(cls, d: dict) -> FareyPath:
        try:
            return cls(int(d["level"]), tuple(tuple(v) for v in d["vertices"]), int(d.get("base", 0)))
        except (KeyError, TypeError) as e:
            raise PathError(f"malformed path: {e}") from e


def cross_minors(path: FareyPath) -> list[int]:
    vs = path.vertices
    return [cross(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))]


def is_minimal(path: FareyPath) -> bool:
    return gcd_all(cross_minors(path)) == 1


@dataclass(frozen=True)
class Itinerary:
    """Coefficients ``c[i]`` with ``v[i+1] = c[i] v[i] - v[i-1]`` for i = start, start+1, ..."""

    level: int
    start: int
    values: tuple[Fraction, ...] = field(default=())

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i - self.start]

    def __len__(self) -> int:
        return len(self.values)


def itinerary(path: FareyPath) -> Itinerary:
    vs, R = path.vertices, path.level
    vals = tuple(Fraction(cross(vs[i - 1], vs[i + 1]), R) for i in range(1, len(vs) - 1))
    return Itinerary(R, path.base + 1, vals)


def reconstruct_path(it: Itinerary, first_edge: tuple[Vertex, Vertex], extent: Optional[int] = None) -> FareyPath:
    """Rebuild a path from an itinerary and its edge at indices (start-1, start).

    ``extent`` caps the number of recurrence steps taken.
    """
    u, v = tuple(first_edge[0]), tuple(first_edge[1])
    if cross(u, v) != it.level:
        raise PathError("first edge is not an edge of the given level", it.start)
    steps = len(it.values) if extent is None else min(extent, len(it.values))
    vs = [u, v]
    for k in range(steps):
        c = it.values[k]
        a = c * vs[-1][0] - vs[-2][0]
        b = c * vs[-1][1] - vs[-2][1]
        if Fraction(a).denominator != 1 or Fraction(b).denominator != 1:
            raise PathError("itinerary produces a non-integer vertex", it.start + k + 1)
        vs.append((int(a), int(b)))
    return FareyPath(it.level, tuple(vs), it.start - 1)


def canonical_form(path: FareyPath) -> tuple[IntMatrix, IntMatrix]:
    """Return (C, X) with X in SL2, X [v0 v1] = C = ((r, 0), (s, t)), r t = R, 0 <= s < r.

    The pair of vertices used is the first edge.  Non-minimal paths are rejected.
    """
    if not is_minimal(path):
        raise PathError("canonical form needs a minimal path")
    (a0, b0), (a1, b1) = path.vertices[0], path.vertices[1]
    g, x, y = ext_gcd(a1, b1)
    X = [[b1 // g, -a1 // g], [x, y]]
    # X applied to v0 gives (R/g, s), to v1 gives (0, g)
    r = (b1 * a0 - a1 * b0) // g
    s = x * a0 + y * b0
    q = s // r
    X[1] = [X[1][0] - q * X[0][0], X[1][1] - q * X[0][1]]
    s -= q * r
    C = ((r, 0), (s, g))
    return C, (tuple(X[0]), tuple(X[1]))


def same_path_class(p: FareyPath, q: FareyPath) -> bool:
    """Whether ``q = X p`` for some X in SL2 (same length and itinerary)."""
    if len(p) != len(q) or p.level != q.level:
        return False
    C1, X1 = canonical_form(p)
    C2, X2 = canonical_form(q)
    if C1 != C2:
        return False
    # X2^-1 X1 maps p's first edge to q's; an equal itinerary then forces the rest
    return itinerary(p).values == itinerary(q).values


# Cyclic order on the extended real line.  Clockwise means decreasing, passing
# from -infinity round to +infinity.

def point(v: Vertex) -> Optional[Fraction]:
    """The point a/b, or None for infinity."""
    a, b = v
    if a == 0 and b == 0:
        raise PathError("zero vector has no point")
    return None if b == 0 else Fraction(a, b)


def _key(p: Optional[Fraction], x: Optional[Fraction]) -> tuple:
    if x == p:
        return (-1, 0)
    if p is None:
        return (0, -x)
    if x is None:
        return (1, 0)
    return (0, -x) if x < p else (2, -x)


def clockwise(p: Vertex, q: Vertex, r: Vertex) -> bool:
    """Distinct points p, q, r lie in clockwise order."""
    P, Q, Rr = point(p), point(q), point(r)
    if len({P, Q, Rr}) < 3:
        return False
    return _key(P, Q) < _key(P, Rr)


def is_clockwise_path(path: FareyPath) -> bool:
    """Vertices run strictly clockwise without completing a full turn.

    A closing vertex equal (as a point) to the first one is allowed.
    """
    pts = [point(v) for v in path.vertices]
    if len(pts) > 2 and pts[-1] == pts[0]:
        pts = pts[:-1]
    keys = [_key(pts[0], x) for x in pts[1:]]
    if any(k == (-1, 0) for k in keys):
        return False
    return all(keys[i] < keys[i + 1] for i in range(len(keys) - 1))


def compatible(gamma: FareyPath, delta: FareyPath) -> bool:
    """Clockwise paths whose endpoints run gamma_first, gamma_last, delta_first, delta_last clockwise.

    ``gamma_last == delta_first`` and ``delta_last == gamma_first`` are allowed.
    """
    if not (is_clockwise_path(gamma) and is_clockwise_path(delta)):
        return False
    g0, g1 = point(gamma.first), point(gamma.last)
    d0, d1 = point(delta.first), point(delta.last)
    if g0 == g1 or d0 == d1:
        return False
    end = (3, 0)
    k_g1 = _key(g0, g1)
    k_d0 = _key(g0, d0)
    k_d1 = end if d1 == g0 else _key(g0, d1)
    if k_d0 == (-1, 0):
        return False
    if d0 == g1:
        return k_d0 <= k_d1 and k_d0 != k_d1
    return k_g1 < k_d0 < k_d1


def lambda_length(u: Vertex, v: Vertex) -> int:
    """Lambda length of the horocycles attached to two vertices (a determinant)."""
    return abs(cross(u, v))


@dataclass(frozen=True)
class Horocycle:
    """Horocycle attached to a nonzero integer vector.

    In the upper half-plane it is based at a/b with Euclidean diameter 1/b^2,
    or is the line at height a^2 when b == 0.
    """

    vertex: Vertex

    @property
    def base_point(self) -> Optional[Fraction]:
        return point(self.vertex)

    @property
    def size(self) -> Fraction:
        a, b = self.vertex
        return Fraction(a * a) if b == 0 else Fraction(1, b * b)


def horocycles(path: FareyPath) -> list[Horocycle]:
    return [Horocycle(v) for v in path.vertices]


def path_from_points(level: int, pts: Iterable[Vertex], base: int = 0) -> FareyPath:
    return FareyPath(level, tuple(pts), base)


def primitive(v: Vertex) -> Vertex:
    g = gcd(v[0], v[1])
    return (v[0] // g, v[1] // g) if g else v
