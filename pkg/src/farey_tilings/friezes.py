"""Positive rational friezes, closed clockwise paths, and triangulated polygons.

A frieze of width n over (1/N)Z is stored through its N-scaled integer rows:
``rows[k][j] = N * m[j+k, j]`` for k = 0..n and j = 0..n-1.  Rows 0 and n
are zero, rows 1 and n-1 equal N, and diamonds have determinant N^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .exact import gcd_all
from .farey import FareyPath, PathError, Violation, cross, is_clockwise_path, is_minimal, point
from .tilings import Tiling, TilingError, decompose_tiling


class FriezeError(ValueError):
    pass


@dataclass(frozen=True)
class Frieze:
    width: int
    denom: int
    gcd: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(tuple(int(x) for x in r) for r in self.rows))
        if self.width < 1 or self.denom < 1 or self.gcd < 1:
            raise FriezeError("width, denominator and gcd must be positive")
        if len(self.rows) != self.width + 1 or any(len(r) != self.width for r in self.rows):
            raise FriezeError(f"expected {self.width + 1} rows of length {self.width}")

    def scaled_entry(self, i: int, j: int) -> int:
        """N * m[i, j] for any integers i, j."""
        q, k = divmod(i - j, self.width)
        v = self.rows[k][j % self.width]
        return -v if q % 2 else v

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(self.scaled_entry(i, j), self.denom)

    def tiling(self, lo: int = 0, hi: Optional[int] = None) -> Tiling:
        """The N-scaled bi-infinite tiling restricted to rows and columns lo..hi."""
        hi = self.width if hi is None else hi
        idx = range(lo, hi + 1)
        return Tiling(tuple(tuple(self.scaled_entry(i, j) for j in idx) for i in idx), lo, lo)

    def to_dict(self) -> dict:
        return {"width": self.width, "denom": self.denom, "gcd": self.gcd, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_dict(cls, d: dict) -> Frieze:
        try:
            return cls(int(d["width"]), int(d["denom"]), int(d["gcd"]), tuple(tuple(r) for r in d["rows"]))
        except (KeyError, TypeError, ValueError) as e:
            raise FriezeError(f"malformed frieze: {e}") from e


def validate_frieze(f: Frieze) -> Optional[Violation]:
    n, N, rows = f.width, f.denom, f.rows
    for j in range(n):
        for k, want in ((0, 0), (n, 0), (1, N), (n - 1, N)):
            if rows[k][j] != want:
                return Violation((k, j), want, rows[k][j], "border")
    for k in range(1, n):
        for j in range(n):
            if rows[k][j] <= 0:
                return Violation((k, j), "> 0", rows[k][j], "positivity")
    for k in range(1, n):
        for j in range(n):
            d = rows[k][j] * rows[k][(j + 1) % n] - rows[k - 1][(j + 1) % n] * rows[k + 1][j]
            if d != N * N:
                return Violation((k, j), N * N, d, "diamond rule")
    for k in range(n + 1):
        for j in range(n):
            if rows[k][j] != rows[n - k][(j + k) % n]:
                return Violation((k, j), rows[n - k][(j + k) % n], rows[k][j], "glide symmetry")
    g = gcd_all(x for r in rows for x in r)
    if g != f.gcd:
        return Violation((), f.gcd, g, "gcd")
    return None


def is_closed(path: FareyPath) -> bool:
    a, b = path.first
    return path.last == (-a, -b)


def _vertex(path: FareyPath, i: int) -> tuple[int, int]:
    """Vertex i of the anti-periodic extension (v[i+n] = -v[i])."""
    n = len(path) - 1
    q, r = divmod(i, n)
    a, b = path.vertices[r]
    return (-a, -b) if q % 2 else (a, b)


def frieze_from_path(path: FareyPath, K: int = 1) -> Frieze:
    """Frieze with N * m[i, j] = K (a_j b_i - b_j a_i), N = K R."""
    if not is_closed(path):
        raise PathError("path is not closed (last vertex must be minus the first)")
    if not is_minimal(path):
        raise PathError("path is not minimal")
    if not is_clockwise_path(path):
        raise PathError("path is not clockwise")
    if K < 1:
        raise FriezeError("K must be positive")
    n = len(path) - 1
    rows = tuple(
        tuple(K * cross(_vertex(path, j), _vertex(path, j + k)) for j in range(n)) for k in range(n + 1)
    )
    return Frieze(n, K * path.level, K, rows)


def path_from_frieze(f: Frieze) -> FareyPath:
    """Closed clockwise minimal path (level N/K) whose frieze is f."""
    bad = validate_frieze(f)
    if bad is not None:
        raise FriezeError(str(bad))
    try:
        K, L, gamma, delta = decompose_tiling(f.tiling())
    except TilingError as e:
        raise FriezeError(f"scaled frieze is not a tame tiling: {e}") from e
    if L != 1 or K != f.gcd or delta.vertices != (-gamma).vertices:
        raise FriezeError("unexpected decomposition of the scaled frieze")
    return gamma


def quiddity_cycle(f: Frieze) -> tuple[Fraction, ...]:
    """Third row over one period, rotated to its lexicographically least form."""
    q = [Fraction(x, f.denom) for x in f.rows[2 % (f.width + 1)]]
    return min(tuple(q[i:] + q[:i]) for i in range(len(q)))


# Triangulated polygons.

@dataclass(frozen=True)
class TriangulatedPolygon:
    m: int
    diagonals: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        ds = tuple(tuple(sorted((int(a), int(b)))) for a, b in self.diagonals)
        object.__setattr__(self, "diagonals", ds)
        m = self.m
        if m < 3:
            raise FriezeError("a polygon needs at least 3 vertices")
        if len(ds) != m - 3 or len(set(ds)) != len(ds):
            raise FriezeError(f"need exactly {m - 3} distinct diagonals")
        for a, b in ds:
            if not (0 <= a < b < m) or b - a in (1, m - 1):
                raise FriezeError(f"({a}, {b}) is not a diagonal")
        for (a, b), (c, d) in combinations(ds, 2):
            if a < c < b < d or c < a < d < b:
                raise FriezeError(f"diagonals ({a}, {b}) and ({c}, {d}) cross")

    def edges(self) -> set[tuple[int, int]]:
        sides = {tuple(sorted((i, (i + 1) % self.m))) for i in range(self.m)}
        return sides | set(self.diagonals)

    def triangles(self) -> list[tuple[int, int, int]]:
        E = self.edges()
        return [t for t in combinations(range(self.m), 3)
                if (t[0], t[1]) in E and (t[1], t[2]) in E and (t[0], t[2]) in E]

    def triangle_counts(self) -> list[int]:
        counts = [0] * self.m
        for t in self.triangles():
            for v in t:
                counts[v] += 1
        return counts


def cc_farey_distance(p: TriangulatedPolygon, u: int, v: int) -> int:
    """Conway-Coxeter counting: 0 at u, 1 at its neighbours, triangle sums elsewhere."""
    if u == v:
        raise ValueError("vertices must differ")
    labels = {u: 0}
    for a, b in p.edges():
        if u in (a, b):
            labels[b if a == u else a] = 1
    tris = p.triangles()
    changed = True
    while changed:
        changed = False
        for t in tris:
            unknown = [x for x in t if x not in labels]
            if len(unknown) == 1:
                x, y = (z for z in t if z in labels)
                labels[unknown[0]] = labels[x] + labels[y]
                changed = True
    return labels[v]


@dataclass(frozen=True)
class WeightedPolygon:
    polygon: TriangulatedPolygon
    marked: tuple[tuple[int, int], ...]  # (vertex, weight), clockwise

    def __post_init__(self) -> None:
        mk = tuple((int(v), int(w)) for v, w in self.marked)
        object.__setattr__(self, "marked", mk)
        vs = [v for v, _ in mk]
        if len(mk) < 3 or len(set(vs)) != len(vs) or any(w <= 0 for _, w in mk):
            raise FriezeError("need at least 3 distinct marked vertices with positive weights")
        if any(not 0 <= v < self.polygon.m for v in vs):
            raise FriezeError("marked vertex out of range")
        start = vs.index(min(vs))
        if vs[start:] + vs[:start] != sorted(vs):
            raise FriezeError("marked vertices must be listed in cyclic order")

    def to_dict(self) -> dict:
        return {"m": self.polygon.m, "diagonals": [list(d) for d in self.polygon.diagonals],
                "marked": [list(x) for x in self.marked]}

    @classmethod
    def from_dict(cls, d: dict) -> WeightedPolygon:
        try:
            poly = TriangulatedPolygon(int(d["m"]), tuple(tuple(x) for x in d["diagonals"]))
            marked = d.get("marked") or [[v, 1] for v in range(poly.m)]
            return cls(poly, tuple(tuple(x) for x in marked))
        except (KeyError, TypeError) as e:
            raise FriezeError(f"malformed polygon: {e}") from e


def weighted_denominator(wp: WeightedPolygon) -> int:
    """The common value N of d_i w_{i-1} w_i, with d_i the Farey distance of consecutive marks."""
    mk = wp.marked
    prods = {cc_farey_distance(wp.polygon, mk[i - 1][0], mk[i][0]) * mk[i - 1][1] * mk[i][1]
             for i in range(len(mk))}
    if len(prods) != 1:
        raise FriezeError(f"products d_i w_(i-1) w_i are not constant: {sorted(prods)}")
    return prods.pop()


def weighted_polygon_frieze(wp: WeightedPolygon) -> Frieze:
    """Frieze whose N-scaled entries are w_x w_y times the Farey distance of marks x, y."""
    N = weighted_denominator(wp)
    mk = wp.marked
    n = len(mk)

    def scaled(i: int, j: int) -> int:
        if (i - j) % n == 0:
            return 0
        (u, wu), (v, wv) = mk[i % n], mk[j % n]
        return wu * wv * cc_farey_distance(wp.polygon, u, v)

    rows = tuple(tuple(scaled(j + k, j) for j in range(n)) for k in range(n + 1))
    K = gcd_all(x for r in rows for x in r)
    return Frieze(n, N, K, rows)


def weighted_polygon_quiddity(wp: WeightedPolygon) -> tuple[int, list[int]]:
    """(N, labels) with label i = w_(i-1) w_(i+1) times the distance between marks i-1 and i+1.

    Labels are the third row of the N-scaled frieze, starting at the first mark.
    """
    f = weighted_polygon_frieze(wp)
    n = f.width
    return f.denom, [f.rows[2][(i - 1) % n] for i in range(n)]


def farey_embedding(p: TriangulatedPolygon) -> list[tuple[int, int]]:
    """Place the vertices on Farey points so every triangle is a Farey triangle.

    Vertex 0 goes to 1/0 and vertex m-1 to 0/1; apexes are vector sums.
    """
    E = p.edges()
    V: dict[int, tuple[int, int]] = {0: (1, 0), p.m - 1: (0, 1)}
    stack = [(0, p.m - 1)]
    while stack:
        i, j = stack.pop()
        if j - i < 2:
            continue
        k = next(k for k in range(i + 1, j) if (i, k) in E and (k, j) in E)
        V[k] = (V[i][0] + V[j][0], V[i][1] + V[j][1])
        stack += [(i, k), (k, j)]
    return [V[i] for i in range(p.m)]


def closed_path_points(path: FareyPath) -> list:
    return [point(v) for v in path.vertices[:-1]]
