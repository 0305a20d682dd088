"""Integer N-tilings: finite windows of integer arrays whose contiguous 2x2
blocks all share one determinant N.

Rows and columns carry integer indices; ``row_base`` is the index of the first
stored row.  Both index ranges must contain 0 and 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence, Union

from .exact import (
    Number,
    det,
    gcd_all,
    minors2,
    sign,
    smith,
    solve_integer,
)
from .farey import FareyPath, PathError, cross, is_clockwise_path, compatible, is_minimal

Entry = Union[int, Fraction]


class TilingError(ValueError):
    def __init__(self, message: str, where: Optional[tuple] = None):
        super().__init__(message if where is None else f"{message} at {where}")
        self.where = where


@dataclass(frozen=True)
class Tiling:
    entries: tuple[tuple[Entry, ...], ...]
    row_base: int = 0
    col_base: int = 0

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if len(rows) < 2 or len(rows[0]) < 2:
            raise TilingError("a tiling needs at least 2 rows and 2 columns")
        if any(len(r) != len(rows[0]) for r in rows):
            raise TilingError("ragged rows")
        for name, base, n in (("row", self.row_base, len(rows)), ("column", self.col_base, len(rows[0]))):
            if not (base <= 0 and base + n - 1 >= 1):
                raise TilingError(f"{name} indices {base}..{base + n - 1} must contain 0 and 1")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    @property
    def rows(self) -> range:
        return range(self.row_base, self.row_base + len(self.entries))

    @property
    def cols(self) -> range:
        return range(self.col_base, self.col_base + len(self.entries[0]))

    def __getitem__(self, ij: tuple[int, int]) -> Entry:
        i, j = ij
        if i not in self.rows or j not in self.cols:
            raise IndexError(ij)
        return self.entries[i - self.row_base][j - self.col_base]

    def scaled(self, c: Number) -> Tiling:
        return Tiling(tuple(tuple(_norm(x * c) for x in r) for r in self.entries), self.row_base, self.col_base)

    def __neg__(self) -> Tiling:
        return self.scaled(-1)

    def to_dict(self) -> dict:
        return {
            "rows": [self.rows.start, self.rows.stop - 1],
            "cols": [self.cols.start, self.cols.stop - 1],
            "entries": [[_jsonable(x) for x in r] for r in self.entries],
        }

    @classmethod
    def from_dict(cls, d: dict) -> Tiling:
        try:
            entries = [[_parse_entry(x) for x in r] for r in d["entries"]]
            rows = d.get("rows", [0, len(entries) - 1])
            cols = d.get("cols", [0, len(entries[0]) - 1 if entries else -1])
        except (KeyError, TypeError, IndexError) as e:
            raise TilingError(f"malformed tiling: {e}") from e
        t = cls(tuple(map(tuple, entries)), int(rows[0]), int(cols[0]))
        if list(rows) != [t.rows.start, t.rows.stop - 1] or list(cols) != [t.cols.start, t.cols.stop - 1]:
            raise TilingError("index ranges do not match the entry array")
        return t


def _norm(x: Entry) -> Entry:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _jsonable(x: Entry) -> Union[int, str]:
    return x if isinstance(x, int) else str(x)


def _parse_entry(x) -> Entry:
    if isinstance(x, bool):
        raise TypeError("boolean entry")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return _norm(Fraction(x))
    raise TypeError(f"bad entry {x!r}")


def block_det(t: Tiling, i: int, j: int) -> Entry:
    """Determinant of the contiguous 2x2 block with top-left corner (i, j)."""
    return t[i, j] * t[i + 1, j + 1] - t[i, j + 1] * t[i + 1, j]


def verify_n_tiling(t: Tiling) -> Entry:
    N = None
    for i in t.rows[:-1]:
        for j in t.cols[:-1]:
            d = block_det(t, i, j)
            if N is None:
                N = d
            elif d != N:
                raise TilingError(f"block determinant {d} differs from {N}", (i, j))
    return _norm(N)


def _is_tiling(t: Tiling) -> Optional[Entry]:
    try:
        return verify_n_tiling(t)
    except TilingError:
        return None


def is_tame(t: Tiling, r_max: Optional[int] = None, s_max: Optional[int] = None) -> bool:
    """Tameness test.

    For N != 0 every contiguous 3x3 block must be singular.  For N = 0 the
    array must factor as K a d^T with both factors completable to minimal
    paths; completion levels are searched up to ``r_max`` / ``s_max``
    (default: square of the largest factor entry, plus 1).
    """
    N = _is_tiling(t)
    if N is None:
        return False
    if N == 0:
        return tame_zero(t, r_max, s_max) is not None
    k, l = t.shape
    m = t.entries
    for i in range(k - 2):
        for j in range(l - 2):
            if det([r[j:j + 3] for r in m[i:i + 3]]) != 0:
                return False
    return True


@dataclass(frozen=True)
class TamenessParams:
    K: int
    L: int
    R: int
    S: int


def _require_int(t: Tiling) -> tuple[tuple[int, ...], ...]:
    if not all(isinstance(x, int) for r in t.entries for x in r):
        raise TilingError("integer entries required")
    return t.entries


def tameness_parameters(t: Tiling) -> TamenessParams:
    m = _require_int(t)
    N = verify_n_tiling(t)
    if not is_tame(t):
        raise TilingError("tiling is not tame")
    if N == 0:
        K, a, b, R, d, c, S = tame_zero(t)
        return TamenessParams(K, 0, R, S)
    k, l = t.shape
    K = gcd_all(x for r in m for x in r)
    # consecutive columns give |N|/R, consecutive rows give |N|/S
    r = gcd_all(
        m[i][j] * m[i2][j + 1] - m[i][j + 1] * m[i2][j]
        for j in range(l - 1) for i in range(k) for i2 in range(i + 1, k)
    )
    s = gcd_all(
        m[i][j] * m[i + 1][j2] - m[i][j2] * m[i + 1][j]
        for i in range(k - 1) for j in range(l) for j2 in range(j + 1, l)
    )
    tt = gcd_all(minors2(m))
    R, S = abs(N) // r, abs(N) // s
    L = sign(N) * tt // (K * K)
    if K * K * L * R * S != N or R * S * tt != abs(N):
        raise TilingError("inconsistent minors; not a tame tiling")
    return TamenessParams(K, L, R, S)


def recurrence_coefficients(t: Tiling) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
    """Rationals r_i, s_j with m[i-1,j] + m[i+1,j] = r_i m[i,j] and the column analogue.

    Keys are the interior row and column indices.
    """
    if verify_n_tiling(t) == 0 or not is_tame(t):
        raise TilingError("needs a tame tiling with nonzero determinant")

    def coeffs(get, outer: range, inner: range, what: str) -> dict[int, Fraction]:
        out = {}
        for i in outer[1:-1]:
            j0 = next((j for j in inner if get(i, j) != 0), None)
            if j0 is None:
                raise TilingError(f"zero {what}", (i,))
            c = Fraction(get(i - 1, j0) + get(i + 1, j0)) / get(i, j0)
            for j in inner:
                if get(i - 1, j) + get(i + 1, j) != c * get(i, j):
                    raise TilingError(f"{what} recurrence fails", (i, j))
            out[i] = c
        return out

    rs = coeffs(lambda i, j: t[i, j], t.rows, t.cols, "row")
    ss = coeffs(lambda j, i: t[i, j], t.cols, t.rows, "column")
    return rs, ss


def construct_tiling(K: int, L: int, gamma: FareyPath, delta: FareyPath) -> Tiling:
    """m[i,j] = K (a_i d_j - L b_i c_j) for gamma = (a_i/b_i), delta = (c_j/d_j)."""
    if K <= 0:
        raise TilingError("K must be positive")
    for name, p in (("gamma", gamma), ("delta", delta)):
        if not is_minimal(p):
            raise PathError(f"{name} is not minimal")
    entries = tuple(
        tuple(K * (a * d - L * b * c) for c, d in delta.vertices) for a, b in gamma.vertices
    )
    return Tiling(entries, gamma.base, delta.base)


def decompose_tiling(t: Tiling) -> tuple[int, int, FareyPath, FareyPath]:
    """Inverse of ``construct_tiling`` for tame tilings with N != 0."""
    m = _require_int(t)
    N = verify_n_tiling(t)
    if N == 0:
        raise TilingError("decomposition needs N != 0")
    if not is_tame(t):
        raise TilingError("tiling is not tame")
    sm = smith(m)
    diag = sm.diagonal
    if sm.rank != 2:
        raise TilingError(f"rank {sm.rank} instead of 2")
    K = diag[0]
    L = sign(N) * diag[1] // K
    # m = K (x0 y0^T + |L| x1 y1^T)
    a = [row[0] for row in sm.U]
    b = [row[1] for row in sm.U]
    d = list(sm.V[0])
    c = [-sign(L) * y for y in sm.V[1]]
    if a[0] * b[1] - b[0] * a[1] < 0:
        b = [-x for x in b]
        c = [-x for x in c]
    if b[0] < 0 or (b[0] == 0 and a[0] < 0):
        a, b, c, d = ([-x for x in v] for v in (a, b, c, d))
    R = a[0] * b[1] - b[0] * a[1]
    S = c[0] * d[1] - d[0] * c[1]
    gamma = FareyPath(R, tuple(zip(a, b)), t.row_base)
    delta = FareyPath(S, tuple(zip(c, d)), t.col_base)
    return K, L, gamma, delta


def gamma0_act(abcd: Sequence[int], L: int, gamma: FareyPath, delta: FareyPath) -> tuple[FareyPath, FareyPath]:
    """Act on a path pair by (p, q; r, s) with p s - q r L = 1.

    gamma is moved by (p, qL; r, s) and delta by (p, q; rL, s); the tiling
    built from the pair does not change.
    """
    p, q, r, s = abcd
    if p * s - q * r * L != 1:
        raise ValueError("not an element of the level-L congruence group")
    return gamma.act(((p, q * L), (r, s))), delta.act(((p, q), (r * L, s)))


def gamma0_witness(L: int, src: tuple[FareyPath, FareyPath], dst: tuple[FareyPath, FareyPath]) -> Optional[tuple[int, int, int, int]]:
    """Find (p, q, r, s) carrying the pair ``src`` to ``dst``, if one exists."""
    (g, d), (g2, d2) = src, dst
    u0, u1 = g.vertices[0], g.vertices[1]
    w0, w1 = g2.vertices[0], g2.vertices[1]
    D = cross(u0, u1)
    # A [u0 u1] = [w0 w1]  =>  A = [w0 w1] [u0 u1]^-1
    inv = ((u1[1], -u1[0]), (-u0[1], u0[0]))
    A = [[Fraction(w0[r] * inv[0][c] + w1[r] * inv[1][c], D) for c in range(2)] for r in range(2)]
    if any(x.denominator != 1 for row in A for x in row):
        return None
    (p, qL), (r, s) = ((int(x) for x in row) for row in A)
    if L == 0 or qL % L:
        return None
    q = qL // L
    try:
        h, e = gamma0_act((p, q, r, s), L, g, d)
    except (ValueError, PathError):
        return None
    if h.vertices != g2.vertices or e.vertices != d2.vertices:
        return None
    return p, q, r, s


def classify_sign(t: Tiling) -> str:
    vals = [x for r in t.entries for x in r]
    if all(x > 0 for x in vals):
        return "positive"
    if all(x < 0 for x in vals):
        return "negative"
    return "mixed"


def positivity_from_paths(K: int, L: int, gamma: FareyPath, delta: FareyPath) -> str:
    """Sign class of the tiling built from the pair, read off the paths alone.

    Only valid for N > 0 (so L > 0): the tiling is positive or negative
    exactly when gamma and L*delta are compatible clockwise paths.
    """
    if L <= 0:
        raise ValueError("path-side sign test needs L > 0")
    if not compatible(gamma, delta.scale_first(L)):
        return "mixed"
    (a, b), (c, d) = gamma.first, delta.first
    return "positive" if K * (a * d - L * b * c) > 0 else "negative"


def scale_correspondence(t: Tiling) -> Tiling:
    """Divide a tame N^2-tiling by N, giving an SL2-tiling over (1/N)Z."""
    N2 = verify_n_tiling(t)
    if not isinstance(N2, int) or N2 <= 0 or isqrt(N2) ** 2 != N2:
        raise TilingError(f"determinant {N2} is not a positive square")
    return t.scaled(Fraction(1, isqrt(N2)))


def unscale_correspondence(t: Tiling, N: int) -> Tiling:
    """Multiply an SL2-tiling over (1/N)Z by N."""
    if N <= 0:
        raise TilingError("N must be positive")
    out = t.scaled(N)
    if not all(isinstance(x, int) for r in out.entries for x in r):
        raise TilingError("entries are not in (1/N)Z")
    return out


# Tame 0-tilings.

def _rank_one_factor(m: Sequence[Sequence[int]]) -> Optional[tuple[int, list[int], list[int]]]:
    """Write m = K a d^T with a, d primitive (d's first nonzero entry positive)."""
    K = gcd_all(x for r in m for x in r)
    if K == 0:
        return None
    i0 = next(i for i, r in enumerate(m) if any(r))
    row = m[i0]
    g = gcd_all(row)
    d = [x // g for x in row]
    if next(x for x in d if x) < 0:
        d = [-x for x in d]
    j0 = next(j for j, x in enumerate(d) if x)
    a = []
    for r in m:
        if r[j0] % d[j0]:
            return None
        a.append(r[j0] // d[j0])
    ga = gcd_all(a)
    a = [x // ga for x in a]
    K = ga
    if any(m[i][j] != K * a[i] * d[j] for i in range(len(m)) for j in range(len(d))):
        return None
    return K, a, d


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _in_span_mod(a: Sequence[int], v: Sequence[int], p: int) -> bool:
    n = len(a)
    return all((a[i] * v[j] - a[j] * v[i]) % p == 0 for i in range(n) for j in range(i + 1, n))


def minimal_completion(a: Sequence[int], R: int) -> Optional[list[int]]:
    """A sequence b with a_{i-1} b_i - b_{i-1} a_i = R and (a_i/b_i) minimal, or None."""
    n = len(a)
    A = []
    for i in range(1, n):
        row = [0] * n
        row[i] += a[i - 1]
        row[i - 1] -= a[i]
        A.append(row)
    sol = solve_integer(A, [R] * (n - 1))
    if sol is None:
        return None
    x0, kernel = sol
    ts = []
    for p in _primes(R):
        if not _in_span_mod(a, x0, p):
            ts.append((p, None))
            continue
        j = next((j for j, k in enumerate(kernel) if not _in_span_mod(a, k, p)), None)
        if j is None:
            return None
        ts.append((p, j))
    # Chinese remainder: t_j = 1 mod p for primes choosing j, 0 mod the others
    coeff = [0] * len(kernel)
    P = 1
    for p, _ in ts:
        P *= p
    for j in range(len(kernel)):
        for p, jj in ts:
            if jj == j:
                Mp = P // p
                coeff[j] += Mp * pow(Mp, -1, p)
        coeff[j] %= P if P > 1 else 1
    b = [x0[i] + sum(c * k[i] for c, k in zip(coeff, kernel)) for i in range(n)]
    vs = tuple(zip(a, b))
    try:
        path = FareyPath(R, vs)
    except PathError:
        return None
    return b if is_minimal(path) else None


def tame_zero(t: Tiling, r_max: Optional[int] = None, s_max: Optional[int] = None):
    """Witness for a tame 0-tiling: (K, a, b, R, d, c, S) with the least R and S, or None."""
    m = _require_int(t)
    if _is_tiling(t) != 0:
        return None
    f = _rank_one_factor(m)
    if f is None:
        return None
    K, a, d = f
    if r_max is None:
        r_max = max(abs(x) for x in a) ** 2 + 1
    if s_max is None:
        s_max = max(abs(x) for x in d) ** 2 + 1
    for R in range(1, r_max + 1):
        b = minimal_completion(a, R)
        if b is not None:
            break
    else:
        return None
    for S in range(1, s_max + 1):
        # c_{j-1} d_j - d_{j-1} c_j = S is the same system with d in place of a and -S
        negc = minimal_completion(d, S)
        if negc is not None:
            c = [-x for x in negc]
            break
    else:
        return None
    return K, a, b, R, d, c, S


def zero_tiling_paths(t: Tiling, r_max: Optional[int] = None, s_max: Optional[int] = None) -> tuple[int, FareyPath, FareyPath]:
    """(K, gamma, delta) with m = K a_i d_j for a tame 0-tiling."""
    w = tame_zero(t, r_max, s_max)
    if w is None:
        raise TilingError("not a tame 0-tiling")
    K, a, b, R, d, c, S = w
    return K, FareyPath(R, tuple(zip(a, b)), t.row_base), FareyPath(S, tuple(zip(c, d)), t.col_base)
