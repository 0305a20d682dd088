"""Exact integer and rational linear algebra.

Everything here works on plain Python ints (arbitrary precision) or
``fractions.Fraction``.  Matrices are tuples of row tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Union

Rat = Fraction
Number = Union[int, Fraction]
IntMatrix = tuple[tuple[int, ...], ...]


def gcd_all(values: Iterable[int]) -> int:
    """Non-negative gcd of all values (0 for an empty or all-zero input)."""
    return reduce(gcd, values, 0)


def sign(x: Number) -> int:
    return (x > 0) - (x < 0)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def det2(a: Number, b: Number, c: Number, d: Number) -> Number:
    return a * d - b * c


def as_matrix(rows: Iterable[Iterable[Number]]) -> tuple:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[Number]]) -> tuple:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence[Number]], b: Sequence[Sequence[Number]]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence[Number]], v: Sequence[Number]) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def det(m: Sequence[Sequence[Number]]) -> Number:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m]
    sgn, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sgn = -sgn
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
            a[i][k] = 0
        prev = a[k][k]
    return sgn * a[n - 1][n - 1]


def inverse2(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Inverse of a 2x2 integer matrix with determinant +-1."""
    (a, b), (c, d) = m
    D = a * d - b * c
    if D not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return ((d * D, -b * D), (-c * D, a * D))


def submatrix(m: Sequence[Sequence[Number]], rows: Sequence[int], cols: Sequence[int]) -> tuple:
    return tuple(tuple(m[i][j] for j in cols) for i in rows)


def minors2(m: Sequence[Sequence[Number]]) -> list:
    """All 2x2 minors (rows i<i', cols j<j')."""
    k = len(m)
    l = len(m[0]) if k else 0
    out = []
    for i in range(k):
        for i2 in range(i + 1, k):
            for j in range(l):
                for j2 in range(j + 1, l):
                    out.append(m[i][j] * m[i2][j2] - m[i][j2] * m[i2][j])
    return out


def rank(m: Sequence[Sequence[Number]]) -> int:
    a = [[Fraction(x) for x in r] for r in m]
    rk = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(rk, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        for i in range(len(a)):
            if i != rk and a[i][c] != 0:
                f = a[i][c] / a[rk][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rk])]
        rk += 1
    return rk


@dataclass(frozen=True)
class Smith:
    """``m = U @ S @ V`` with U, V unimodular; inverses are tracked too."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


class _Ops:
    """Matrix under row/column operations, keeping P, P^-1, Q, Q^-1 with S = P m Q."""

    def __init__(self, m: Sequence[Sequence[int]]):
        self.a = [list(r) for r in m]
        self.k = len(self.a)
        self.l = len(self.a[0]) if self.k else 0
        self.P = [list(r) for r in identity(self.k)]
        self.Pi = [list(r) for r in identity(self.k)]
        self.Q = [list(r) for r in identity(self.l)]
        self.Qi = [list(r) for r in identity(self.l)]

    # row i += c * row j  (inverse: column j of P^-1 -= c * column i)
    def add_row(self, i: int, j: int, c: int) -> None:
        if c == 0:
            return
        for M in (self.a, self.P):
            M[i] = [x + c * y for x, y in zip(M[i], M[j])]
        for r in self.Pi:
            r[j] -= c * r[i]

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        for M in (self.a, self.P):
            M[i], M[j] = M[j], M[i]
        for r in self.Pi:
            r[i], r[j] = r[j], r[i]

    def neg_row(self, i: int) -> None:
        for M in (self.a, self.P):
            M[i] = [-x for x in M[i]]
        for r in self.Pi:
            r[i] = -r[i]

    # col i += c * col j  (inverse: row j of Q^-1 -= c * row i)
    def add_col(self, i: int, j: int, c: int) -> None:
        if c == 0:
            return
        for M in (self.a, self.Q):
            for r in M:
                r[i] += c * r[j]
        self.Qi[j] = [x - c * y for x, y in zip(self.Qi[j], self.Qi[i])]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for M in (self.a, self.Q):
            for r in M:
                r[i], r[j] = r[j], r[i]
        self.Qi[i], self.Qi[j] = self.Qi[j], self.Qi[i]


def smith(m: Sequence[Sequence[int]]) -> Smith:
    """Smith normal form with transforms and their inverses."""
    ops = _Ops(m)
    a, k, l = ops.a, ops.k, ops.l
    t = 0
    while t < min(k, l):
        entries = [(abs(a[i][j]), i, j) for i in range(t, k) for j in range(t, l) if a[i][j] != 0]
        if not entries:
            break
        _, i, j = min(entries)
        ops.swap_rows(t, i)
        ops.swap_cols(t, j)
        while True:
            p = a[t][t]
            changed = False
            for i in range(t + 1, k):
                if a[i][t]:
                    q = a[i][t] // p
                    ops.add_row(i, t, -q)
                    if a[i][t]:
                        changed = True
            for j in range(t + 1, l):
                if a[t][j]:
                    q = a[t][j] // p
                    ops.add_col(j, t, -q)
                    if a[t][j]:
                        changed = True
            if changed:
                entries = [(abs(a[i][t]), i, t) for i in range(t, k) if a[i][t]]
                entries += [(abs(a[t][j]), t, j) for j in range(t, l) if a[t][j]]
                _, i, j = min(entries)
                ops.swap_rows(t, i)
                ops.swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, k) for j in range(t + 1, l) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            ops.add_row(t, bad, 1)
        if a[t][t] < 0:
            ops.neg_row(t)
        t += 1
    S = as_matrix(a)
    return Smith(
        U=as_matrix(ops.Pi), S=S, V=as_matrix(ops.Qi), U_inv=as_matrix(ops.P), V_inv=as_matrix(ops.Q)
    )


def smith_normal_form(m: Sequence[Sequence[int]], positive_det: bool = False) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, S, V) with ``m = U S V``, S diagonal with d1 | d2 | ...

    With ``positive_det`` the transforms are sign-adjusted to determinant +1
    where the shape allows it (a spare zero row or column, or flipping both).
    """
    sm = smith(m)
    U, S, V = sm.U, sm.S, sm.V
    if positive_det:
        U, V = _fix_signs(U, S, V)
    return U, S, V


def _fix_signs(U: IntMatrix, S: IntMatrix, V: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    k, l = len(U), len(V)
    r = sum(1 for i in range(min(k, l)) if S[i][i])
    u = [list(x) for x in U]
    v = [list(x) for x in V]
    du, dv = det(U), det(V)
    if du < 0 and dv < 0 and k and l:
        for row in u:
            row[0] = -row[0]
        v[0] = [-x for x in v[0]]
        du = dv = 1
    if du < 0 and r < k:
        for row in u:
            row[k - 1] = -row[k - 1]
        du = 1
    if dv < 0 and r < l:
        v[l - 1] = [-x for x in v[l - 1]]
        dv = 1
    return as_matrix(u), as_matrix(v)


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[tuple[int, ...], list[tuple[int, ...]]] | None:
    """All integer solutions of ``A x = b`` as (particular, kernel basis), or None."""
    sm = smith(A)
    k = len(A)
    l = len(A[0]) if k else 0
    c = matvec(sm.U_inv, b)
    diag = sm.diagonal
    y = [0] * l
    for i in range(k):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    x = matvec(sm.V_inv, y)
    kernel = [tuple(sm.V_inv[row][j] for row in range(l)) for j in range(sm.rank, l)]
    return tuple(x), kernel


def to_rat(x: Number | str) -> Fraction:
    return Fraction(x)
