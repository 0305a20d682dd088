"""Bhargava cubes and integer hypertilings.

A cube is a nested tuple ``c[i][j][k]`` with i, j, k in {0, 1}.  The compact
display ``(c000 c010; c100 c110 | c001 c011; c101 c111)`` lists the k = 0
layer and then the k = 1 layer, each with rows i and columns j.

A triple (A, B, C) of 2x2 matrices acts on cubes by
``c'[i][j][k] = sum A[i][p] B[j][q] C[k][r] c[p][q][r]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import gcd
from typing import Iterator, Optional, Sequence

from .exact import det, inverse2, matmul, smith
from .farey import FareyPath, PathError, Violation, cross, is_minimal
from .tilings import Tiling, TilingError, is_tame

Cube = tuple[tuple[tuple[int, int], tuple[int, int]], tuple[tuple[int, int], tuple[int, int]]]
Mat2 = tuple[tuple[int, int], tuple[int, int]]
Triple = tuple[Mat2, Mat2, Mat2]

I2: Mat2 = ((1, 0), (0, 1))
J: Mat2 = ((0, 1), (-1, 0))
Q: Mat2 = ((1, 0), (0, -1))
P_SHIFT: Mat2 = ((0, 1), (-1, 3))
ID_TRIPLE: Triple = (I2, I2, I2)


class HypertilingError(ValueError):
    def __init__(self, message: str, where: Optional[tuple] = None):
        super().__init__(message if where is None else f"{message} at {where}")
        self.where = where


def cube_from_display(c000, c010, c100, c110, c001, c011, c101, c111) -> Cube:
    return (((c000, c001), (c010, c011)), ((c100, c101), (c110, c111)))


def cube_display(c: Cube) -> tuple[int, ...]:
    return (c[0][0][0], c[0][1][0], c[1][0][0], c[1][1][0], c[0][0][1], c[0][1][1], c[1][0][1], c[1][1][1])


def as_cube(x) -> Cube:
    return tuple(tuple(tuple(int(v) for v in row) for row in sl) for sl in x)


UNIT_CUBE = cube_from_display(1, 0, 0, 0, 0, 0, 0, 1)
UNIT_CUBE_DAGGER = cube_from_display(1, 0, 0, 0, 0, 0, 0, -1)
FIB_CUBE = cube_from_display(3, -1, -1, 0, -1, 0, 0, 1)


def layer(c: Cube, k: int) -> Mat2:
    return ((c[0][0][k], c[0][1][k]), (c[1][0][k], c[1][1][k]))


def hyperdet(c: Cube) -> int:
    """Cayley hyperdeterminant, expanded form."""
    (((a, e), (b, f)), ((c_, g), (d, h))) = c
    # a=c000 b=c010 c_=c100 d=c110 e=c001 f=c011 g=c101 h=c111
    return ((a * h - f * c_) + (e * d - b * g)) ** 2 - 4 * (a * d - b * c_) * (e * h - f * g)


def hyperdet_layers(c: Cube) -> int:
    """Hyperdeterminant through the two layer determinants."""
    M1, M2 = layer(c, 0), layer(c, 1)
    plus = det([[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(M1, M2)])
    minus = det([[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(M1, M2)])
    diff = plus - minus
    assert diff % 2 == 0
    return (diff // 2) ** 2 - 4 * det(M1) * det(M2)


def act_triple(t: Sequence[Sequence[Sequence[int]]], c: Cube) -> Cube:
    A, B, C = t
    return tuple(
        tuple(
            tuple(
                sum(A[i][p] * B[j][q] * C[k][r] * c[p][q][r]
                    for p in (0, 1) for q in (0, 1) for r in (0, 1))
                for k in (0, 1))
            for j in (0, 1))
        for i in (0, 1))


def compose(s: Triple, t: Triple) -> Triple:
    """Triple whose action is s after t."""
    return tuple(matmul(x, y) for x, y in zip(s, t))


def invert(t: Triple) -> Triple:
    return tuple(inverse2(x) for x in t)


def stabilizes(t: Triple, c: Cube) -> bool:
    return act_triple(t, c) == c


def _neg(m: Mat2) -> Mat2:
    return tuple(tuple(-x for x in r) for r in m)


def unit_cube_stabilizer() -> list[Triple]:
    mI = _neg(I2)
    return [(I2, I2, I2), (I2, mI, mI), (mI, I2, mI), (mI, mI, I2)]


def permute_cube(c: Cube, perm: Sequence[int]) -> Cube:
    """Cube whose axis n is the old axis perm[n]."""
    def get(x):
        old = [0, 0, 0]
        for n in range(3):
            old[perm[n]] = x[n]
        return c[old[0]][old[1]][old[2]]
    return tuple(tuple(tuple(get((i, j, k)) for k in (0, 1)) for j in (0, 1)) for i in (0, 1))


def permute_triple(t: Triple, perm: Sequence[int]) -> Triple:
    """Triple on old axes equivalent to ``t`` acting on the permuted cube."""
    out = [None, None, None]
    for n in range(3):
        out[perm[n]] = t[n]
    return tuple(out)


# Normalisation of hyperdeterminant-1 cubes.

def _diag_q(flags: Sequence[int]) -> Triple:
    return tuple(Q if f else I2 for f in flags)


def _reduced_alpha_zero(c: Cube) -> Triple:
    """Triple taking the reduced cube (1,0;0,0 | 0,b;g,d), d = +-1, to the unit cube or its dagger."""
    beta, gamma, delta = c[0][1][1], c[1][0][1], c[1][1][1]
    s, u = -beta * delta, -gamma * delta
    t1: Triple = (((1, s), (0, 1)), ((1, u), (0, 1)), I2)
    c1 = act_triple(t1, c)
    x = c1[0][0][1]
    t2: Triple = (I2, I2, ((1, 0), (-x, 1)))
    return compose(t2, t1)


def normalize_unit_cube(A: Cube) -> Triple:
    """An SL2 triple t with act_triple(t, UNIT_CUBE) == A, for a cube of hyperdeterminant 1."""
    A = as_cube(A)
    if hyperdet(A) != 1:
        raise HypertilingError(f"hyperdeterminant is {hyperdet(A)}, not 1")
    acc: Triple = ID_TRIPLE

    def apply(t: Triple) -> Cube:
        nonlocal acc
        acc = compose(t, acc)
        return act_triple(acc, A)

    # top layer to (1, 0; 0, *)
    sm = smith(layer(A, 0))
    X = sm.U_inv
    Y = tuple(zip(*sm.V_inv))
    if det(X) < 0:
        X = matmul(Q, X)
    if det(Y) < 0:
        Y = matmul(Q, Y)
    c = apply((X, Y, I2))
    assert layer(c, 0)[0] == (1, 0) and layer(c, 0)[1][0] == 0
    c = apply((I2, I2, ((1, 0), (-c[0][0][1], 1))))
    assert c[0][0][1] == 0
    alpha, beta, gamma, delta = c[1][1][0], c[0][1][1], c[1][0][1], c[1][1][1]
    assert delta * delta + 4 * alpha * beta * gamma == 1

    if alpha * beta * gamma == 0:
        perm = (0, 1, 2) if alpha == 0 else (1, 2, 0) if beta == 0 else (0, 2, 1)
        t = _reduced_alpha_zero(permute_cube(c, perm))
        c = apply(permute_triple(t, perm))
        assert c in (UNIT_CUBE, UNIT_CUBE_DAGGER)
        witness = invert(acc) if c == UNIT_CUBE else compose(invert(acc), (J, J, J))
    else:
        # flip signs so that alpha, beta, gamma, delta are all negative
        for flags in product((0, 1), repeat=3):
            trial = act_triple(_diag_q(flags), c)
            vals = (trial[1][1][0], trial[0][1][1], trial[1][0][1], trial[1][1][1])
            if all(v < 0 for v in vals):
                c = apply(_diag_q(flags))
                break
        else:
            raise AssertionError("no sign normalisation found")
        alpha, beta, gamma, delta = c[1][1][0], c[0][1][1], c[1][0][1], c[1][1][1]
        # alpha couples axes i, j so its matrix acts on k; likewise beta -> i, gamma -> j
        U = (_gcd_matrix(beta, delta), _gcd_matrix(gamma, delta), _gcd_matrix(alpha, delta))
        assert act_triple(U, UNIT_CUBE) == c
        witness = compose(invert(acc), U)
    # fold determinant -1 components back into SL2
    flags = tuple(int(det(m) < 0) for m in witness)
    if any(flags):
        witness = compose(witness, _diag_q(flags))
        if sum(flags) % 2:
            witness = compose(witness, (J, J, J))
    witness = tuple(tuple(tuple(r) for r in m) for m in witness)
    assert all(det(m) == 1 for m in witness)
    assert act_triple(witness, UNIT_CUBE) == A
    return witness


def _gcd_matrix(x: int, delta: int) -> Mat2:
    g = gcd(x, (1 - delta) // 2)
    h = -gcd(x, (1 + delta) // 2)
    return ((h, g), ((delta - 1) // (2 * g), (delta + 1) // (2 * h)))


def stabilizer_search(bound: int = 2) -> list[Triple]:
    """All SL2 triples with entries in [-bound, bound] fixing the unit cube (brute force)."""
    import numpy as np

    mats = [((a, b), (c, d)) for a, b, c, d in product(range(-bound, bound + 1), repeat=4) if a * d - b * c == 1]
    M = np.array(mats, dtype=np.int64)
    n = len(mats)
    # image of the unit cube: A[i,0]B[j,0]C[k,0] + A[i,1]B[j,1]C[k,1]
    c0, c1 = M[:, :, 0], M[:, :, 1]
    img = (np.einsum("ai,bj,ck->abcijk", c0, c0, c0) + np.einsum("ai,bj,ck->abcijk", c1, c1, c1))
    target = np.array(UNIT_CUBE, dtype=np.int64)
    hits = np.argwhere((img == target).reshape(n, n, n, 8).all(axis=-1))
    return [(mats[a], mats[b], mats[c]) for a, b, c in hits]


# Hypertilings.

@dataclass(frozen=True)
class Hypertiling:
    entries: tuple  # entries[i][j][k]
    bases: tuple[int, int, int] = (0, 0, 0)

    def __post_init__(self) -> None:
        e = tuple(tuple(tuple(x for x in row) for row in sl) for sl in self.entries)
        object.__setattr__(self, "entries", e)
        object.__setattr__(self, "bases", tuple(int(b) for b in self.bases))
        if not e or not e[0] or not e[0][0]:
            raise HypertilingError("empty hypertiling")
        shape = (len(e), len(e[0]), len(e[0][0]))
        if any(len(sl) != shape[1] or any(len(r) != shape[2] for r in sl) for sl in e):
            raise HypertilingError("ragged array")
        for ax, (b, n) in enumerate(zip(self.bases, shape)):
            if n < 2 or not (b <= 0 and b + n - 1 >= 1):
                raise HypertilingError(f"axis {ax} range {b}..{b + n - 1} must contain 0 and 1")

    @property
    def shape(self) -> tuple[int, int, int]:
        e = self.entries
        return len(e), len(e[0]), len(e[0][0])

    @property
    def ranges(self) -> tuple[range, range, range]:
        return tuple(range(b, b + n) for b, n in zip(self.bases, self.shape))

    def __getitem__(self, ijk: tuple[int, int, int]) -> int:
        i, j, k = (x - b for x, b in zip(ijk, self.bases))
        if min(i, j, k) < 0:
            raise IndexError(ijk)
        return self.entries[i][j][k]

    def block(self, i: int, j: int, k: int) -> Cube:
        return tuple(tuple(tuple(self[i + p, j + q, k + r] for r in (0, 1)) for q in (0, 1)) for p in (0, 1))

    def to_dict(self) -> dict:
        return {"ranges": [[r.start, r.stop - 1] for r in self.ranges],
                "entries": [[list(r) for r in sl] for sl in self.entries]}

    @classmethod
    def from_dict(cls, d: dict) -> Hypertiling:
        try:
            e = d["entries"]
            bases = tuple(r[0] for r in d.get("ranges", [[0], [0], [0]]))
            h = cls(e, bases)
        except (KeyError, TypeError, IndexError) as err:
            raise HypertilingError(f"malformed hypertiling: {err}") from err
        if any(isinstance(x, bool) or not isinstance(x, int) for sl in h.entries for r in sl for x in r):
            raise HypertilingError("entries must be integers")
        if "ranges" in d and [list(r) for r in d["ranges"]] != [[r.start, r.stop - 1] for r in h.ranges]:
            raise HypertilingError("ranges do not match the entry array")
        return h


def verify_hypertiling(h: Hypertiling) -> int:
    I, Jr, K = h.ranges
    N = None
    for i in I[:-1]:
        for j in Jr[:-1]:
            for k in K[:-1]:
                d = hyperdet(h.block(i, j, k))
                if N is None:
                    N = d
                elif d != N:
                    raise HypertilingError(f"block hyperdeterminant {d} differs from {N}", (i, j, k))
    return N


def cross_section(h: Hypertiling, axis: int, index: int) -> Tiling:
    I, Jr, K = h.ranges
    if index not in h.ranges[axis]:
        raise HypertilingError(f"index {index} out of range on axis {axis}")
    if axis == 0:
        e = [[h[index, j, k] for k in K] for j in Jr]
        return Tiling(e, Jr.start, K.start)
    if axis == 1:
        e = [[h[i, index, k] for k in K] for i in I]
        return Tiling(e, I.start, K.start)
    if axis == 2:
        e = [[h[i, j, index] for j in Jr] for i in I]
        return Tiling(e, I.start, Jr.start)
    raise ValueError("axis must be 0, 1 or 2")


def _fibers(h: Hypertiling, axis: int) -> Iterator[tuple[tuple, tuple[int, ...]]]:
    """Yield (position, values along axis) for every fiber in the given direction."""
    rs = h.ranges
    others = [a for a in range(3) if a != axis]
    for x in rs[others[0]]:
        for y in rs[others[1]]:
            idx = [0, 0, 0]
            idx[others[0]], idx[others[1]] = x, y
            vals = []
            for z in rs[axis]:
                idx[axis] = z
                vals.append(h[tuple(idx)])
            yield (x, y), tuple(vals)


def synchronisation_violations(h: Hypertiling) -> Iterator[Violation]:
    """Stacks ((a,b),(c,d),(e,f)) of two 3-long fibers inside a 2x2x3-type block with ad-bc != cf-de."""
    rs = h.ranges
    for axis in range(3):
        others = [a for a in range(3) if a != axis]
        fib = dict(_fibers(h, axis))
        for x in rs[others[0]][:-1]:
            for y in rs[others[1]][:-1]:
                pos = [(x, y), (x, y + 1), (x + 1, y), (x + 1, y + 1)]
                for p, q in combinations(pos, 2):
                    u, v = fib[p], fib[q]
                    for z in range(len(u) - 2):
                        a, b, c, d, e, f = u[z], v[z], u[z + 1], v[z + 1], u[z + 2], v[z + 2]
                        if a * d - b * c != c * f - d * e:
                            yield Violation(
                                (axis, p, q, rs[axis][z]),
                                a * d - b * c,
                                c * f - d * e,
                                f"unsynchronised stack {((a, b), (c, d), (e, f))}",
                            )


def unsynchronised_stacks(h: Hypertiling) -> list[tuple[tuple[int, int], tuple[int, int], tuple[int, int]]]:
    out = []
    for v in synchronisation_violations(h):
        axis, p, q, z = v.where
        fib = dict(_fibers(h, axis))
        u, w = fib[p], fib[q]
        z0 = z - h.ranges[axis].start
        out.append(tuple((u[z0 + s], w[z0 + s]) for s in range(3)))
    return out


def is_synchronised(h: Hypertiling) -> bool:
    return next(synchronisation_violations(h), None) is None


def is_tame_hypertiling(h: Hypertiling) -> bool:
    try:
        if verify_hypertiling(h) == 0:
            return False
    except HypertilingError:
        return False
    if not is_synchronised(h):
        return False
    for axis in range(3):
        for idx in h.ranges[axis]:
            try:
                if not is_tame(cross_section(h, axis, idx)):
                    return False
            except TilingError:
                return False
    return True


def hyper_recurrence(h: Hypertiling) -> tuple[dict, dict, dict]:
    """Per-axis rationals r with slice[x-1] + slice[x+1] = r[x] slice[x]."""
    from fractions import Fraction

    out = []
    for axis in range(3):
        coeffs = {}
        fibs = list(_fibers(h, axis))
        rng = h.ranges[axis]
        for z in range(1, len(rng) - 1):
            ref = next(((pos, f) for pos, f in fibs if f[z] != 0), None)
            if ref is None:
                raise HypertilingError("zero slice; recurrence undetermined", (axis, rng[z]))
            r = Fraction(ref[1][z - 1] + ref[1][z + 1], ref[1][z])
            for pos, f in fibs:
                if f[z - 1] + f[z + 1] != r * f[z]:
                    raise HypertilingError("inconsistent fiber recurrence", (axis, rng[z], pos))
            coeffs[rng[z]] = r
        out.append(coeffs)
    return tuple(out)


def construct_hypertiling(A: Cube, u: FareyPath, v: FareyPath, w: FareyPath) -> Hypertiling:
    """m[i,j,k] = sum A[p][q][r] u[i][p] v[j][q] w[k][r]."""
    A = as_cube(A)
    if hyperdet(A) == 0:
        raise HypertilingError("singular cube")
    for name, p in (("u", u), ("v", v), ("w", w)):
        if not is_minimal(p):
            raise PathError(f"path {name} is not minimal")
    e = tuple(
        tuple(
            tuple(
                sum(A[p][q][r] * x[p] * y[q] * z[r] for p in (0, 1) for q in (0, 1) for r in (0, 1))
                for z in w.vertices)
            for y in v.vertices)
        for x in u.vertices)
    return Hypertiling(e, (u.base, v.base, w.base))


def _apply_axis(T: list, X: Sequence[Sequence[int]], axis: int) -> list:
    """Contract matrix X into the given axis: T'[..a..] = sum_p X[a][p] T[..p..]."""
    n0, n1, n2 = len(T), len(T[0]), len(T[0][0])
    dims = [n0, n1, n2]
    out_dims = dims.copy()
    out_dims[axis] = len(X)
    out = [[[0] * out_dims[2] for _ in range(out_dims[1])] for _ in range(out_dims[0])]
    for i in range(out_dims[0]):
        for j in range(out_dims[1]):
            for k in range(out_dims[2]):
                idx = [i, j, k]
                a = idx[axis]
                s = 0
                for p in range(dims[axis]):
                    if X[a][p]:
                        idx[axis] = p
                        s += X[a][p] * T[idx[0]][idx[1]][idx[2]]
                out[i][j][k] = s
    return out


def _flatten(T: list, axis: int) -> list[list[int]]:
    rs = [range(len(T)), range(len(T[0])), range(len(T[0][0]))]
    others = [a for a in range(3) if a != axis]
    rows = []
    for z in rs[axis]:
        row = []
        for x in rs[others[0]]:
            for y in rs[others[1]]:
                idx = [0, 0, 0]
                idx[axis], idx[others[0]], idx[others[1]] = z, x, y
                row.append(T[idx[0]][idx[1]][idx[2]])
        rows.append(row)
    return rows


def decompose_hypertiling(h: Hypertiling) -> tuple[Cube, FareyPath, FareyPath, FareyPath]:
    """(A, u, v, w) with construct_hypertiling(A, u, v, w) == h, for tame h."""
    if not is_tame_hypertiling(h):
        raise HypertilingError("hypertiling is not tame")
    T = [[list(r) for r in sl] for sl in h.entries]
    Us, core = [], T
    for axis in range(3):
        sm = smith(_flatten(T, axis))
        if sm.rank != 2:
            raise HypertilingError(f"axis {axis} has rank {sm.rank}, expected 2")
        Us.append([list(r) for r in sm.U])
        core = _apply_axis(core, sm.U_inv, axis)
    A = [[[core[p][q][r] for r in (0, 1)] for q in (0, 1)] for p in (0, 1)]
    paths = []
    for axis, U in enumerate(Us):
        vs = [(row[0], row[1]) for row in U]
        if cross(vs[0], vs[1]) < 0:
            vs = [(-a, b) for a, b in vs]
            for q, r in product((0, 1), repeat=2):
                idx = [q, r]
                idx.insert(axis, 0)
                A[idx[0]][idx[1]][idx[2]] *= -1
        paths.append(FareyPath(cross(vs[0], vs[1]), tuple(vs), h.bases[axis]))
    cube = as_cube(A)
    return cube, paths[0], paths[1], paths[2]


# Fibonacci classification.

@lru_cache(maxsize=None)
def fib(n: int) -> int:
    if n < 0:
        return fib(-n) if n % 2 else -fib(-n)
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fibonacci_hypertiling(e: int, window: Sequence[tuple[int, int]]) -> Hypertiling:
    """Window of m[i,j,k] = F(2(e+i+j+k) - 1); each window entry is an inclusive (lo, hi)."""
    rs = [range(lo, hi + 1) for lo, hi in window]
    ent = tuple(tuple(tuple(fib(2 * (e + i + j + k) - 1) for k in rs[2]) for j in rs[1]) for i in rs[0])
    return Hypertiling(ent, tuple(r.start for r in rs))


def fibonacci_path(lo: int, hi: int) -> FareyPath:
    """Vertices F(2n-1)/F(2n+1) for n = lo..hi (a path in the classical Farey graph)."""
    return FareyPath(1, tuple((fib(2 * n - 1), fib(2 * n + 1)) for n in range(lo, hi + 1)), lo)


def make_An(n: int) -> Cube:
    return tuple(tuple(tuple(fib(2 * (n + i + j + k) - 3) for k in (0, 1)) for j in (0, 1)) for i in (0, 1))


def face_dets(c: Cube) -> list[int]:
    """Determinants of the six 2x2 faces (i=0, i=1, j=0, j=1, k=0, k=1)."""
    out = []
    for axis in range(3):
        for x in (0, 1):
            m = [[0, 0], [0, 0]]
            for a, b in product((0, 1), repeat=2):
                idx = [a, b]
                idx.insert(axis, x)
                m[a][b] = c[idx[0]][idx[1]][idx[2]]
            out.append(m[0][0] * m[1][1] - m[0][1] * m[1][0])
    return out


H_GENERATORS: tuple[Triple, ...] = ((J, I2, I2), (I2, J, I2), (I2, I2, J), (Q, Q, Q))


def h_orbit(c: Cube) -> set[Cube]:
    seen = {as_cube(c)}
    todo = list(seen)
    while todo:
        x = todo.pop()
        for g in H_GENERATORS:
            y = act_triple(g, x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def fib_pair_oracle(bound: int) -> set[tuple[int, int]]:
    return {(a, b) for a in range(1, bound + 1) for b in range(1, bound + 1) if (a * a + b * b + 1) % (a * b) == 0}


def _solve(coef: int, rhs: int, B: int) -> range | list[int]:
    """All x in [-B, B] with coef * x == rhs."""
    if coef == 0:
        return range(-B, B + 1) if rhs == 0 else []
    if rhs % coef:
        return []
    x = rhs // coef
    return [x] if -B <= x <= B else []


def _progression(coef: int, const: int, mod: int, B: int) -> Iterator[int]:
    """x in [-B, B] with (const + coef x) divisible by mod and |const + coef x| <= B |mod|."""
    m = abs(mod)
    lim = B * m
    lo, hi = -B, B
    if coef:
        a, b = sorted(((-lim - const) / coef, (lim - const) / coef))
        lo, hi = max(lo, int(a) - 1), min(hi, int(b) + 1)
    elif abs(const) > lim:
        return
    if m == 1:
        yield from range(lo, hi + 1)
        return
    g = gcd(coef, m)
    if const % g:
        return
    r = (-const // g) * pow(coef // g, -1, m // g) % (m // g)
    step = m // g
    start = lo + ((r - lo) % step)
    yield from range(start, hi + 1, step)


def sl2_cross_section_cubes(bound: int) -> list[Cube]:
    """Every cube with entries in [-bound, bound] whose six faces have determinant 1."""
    B = bound
    out = []
    for a in range(-B, B + 1):
        for b in range(-B, B + 1):
            # face k=0: a d - b c = 1
            if a:
                layers = ((c, (1 + b * c) // a) for c in _progression(b, 1, a, B))
            else:
                layers = ((c, d) for c in _solve(-b, 1, B) for d in range(-B, B + 1))
            for c, d in layers:
                if abs(d) > B:
                    continue
                # faces i=0: a f - e b = 1 and j=0: a g - e c = 1
                es = _progression(b, 1, a, B) if a else _solve(-b, 1, B)
                for e in es:
                    for f in _solve(a, 1 + e * b, B):
                        for g in _solve(a, 1 + e * c, B):
                            # face k=1: e h - f g = 1
                            for h in _solve(e, 1 + f * g, B):
                                if c * h - g * d == 1 and b * h - f * d == 1:
                                    out.append(cube_from_display(a, b, c, d, e, f, g, h))
    return out
