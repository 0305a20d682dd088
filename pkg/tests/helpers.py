"""Shared generators and displayed data for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Optional

from hypothesis import strategies as st

from farey_tilings import io
from farey_tilings.farey import FareyPath, cross, is_minimal

FIXTURES = Path(__file__).parent / "fixtures"


def fixture(name: str):
    return io.load(FIXTURES / name)


def random_sl2(rng: random.Random, bound: int = 9) -> tuple[tuple[int, int], tuple[int, int]]:
    while True:
        a, b = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if gcd(a, b) != 1:
            continue
        # complete (a, b) to a matrix of determinant 1, then shear
        g, x, y = _egcd(a, b)
        c, d = -y, x
        k = rng.randint(-2, 2)
        c, d = c + k * a, d + k * b
        if max(abs(c), abs(d)) <= bound:
            return (a, b), (c, d)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def random_path(rng: random.Random, level: int, length: int, base: int = 0,
                step: int = 3, minimal: bool = True) -> FareyPath:
    """Random path of the given level: a random first edge, then v[i+1] = (k/g) v[i] - v[i-1]."""
    while True:
        divs = [r for r in range(1, level + 1) if level % r == 0]
        r = rng.choice(divs)
        t = level // r
        s = rng.randrange(r)
        X = random_sl2(rng, 5)
        v0 = (X[0][0] * r + X[0][1] * s, X[1][0] * r + X[1][1] * s)
        v1 = (X[0][1] * t, X[1][1] * t)
        vs = [v0, v1]
        while len(vs) < length:
            u = vs[-1]
            g = gcd(*u)
            k = rng.randint(-step, step)
            vs.append((k * u[0] // g - vs[-2][0], k * u[1] // g - vs[-2][1]))
        p = FareyPath(level, tuple(vs[:length]), base)
        if not minimal or is_minimal(p):
            return p


def random_clockwise_path(rng: random.Random, level: int, length: int, base: int = 0) -> FareyPath:
    """Minimal path with every denominator positive, hence strictly decreasing points."""
    while True:
        first = random_path(rng, level, 2, minimal=False)
        if first.vertices[0][1] < 0 and first.vertices[1][1] < 0:
            first = -first
        vs = list(first.vertices)
        if vs[0][1] <= 0 or vs[1][1] <= 0:
            continue
        while len(vs) < length:
            (a0, b0), (a1, b1) = vs[-2], vs[-1]
            g = gcd(a1, b1)
            # smallest k keeping the next denominator positive, plus a random excess
            k = (g * b0) // b1 + 1 + rng.randint(0, 2)
            vs.append((k * a1 // g - a0, k * b1 // g - b0))
        p = FareyPath(level, tuple(vs), base)
        if is_minimal(p):
            return p


def translate(p: FareyPath, k: int) -> FareyPath:
    return p.act(((1, k), (0, 1)))


@st.composite
def paths(draw, max_level: int = 6, min_len: int = 2, max_len: int = 8):
    seed = draw(st.integers(0, 2**32 - 1))
    length = draw(st.integers(min_len, max_len))
    # a single edge is minimal only at level 1
    level = draw(st.integers(1, max_level)) if length > 2 else 1
    base = draw(st.integers(1 - length + 1, 0)) if length > 2 else 0
    return random_path(random.Random(seed), level, length, base)


sl2 = st.integers(0, 2**32 - 1).map(lambda s: random_sl2(random.Random(s)))


# Displayed arrays and paths, transcribed by hand.

FIG1A = (
    (67, 144, 29, 30, 11, 36, 13),
    (46, 99, 20, 21, 8, 27, 10),
    (25, 54, 11, 12, 5, 18, 7),
    (4, 9, 2, 3, 2, 9, 4),
    (7, 18, 5, 12, 11, 54, 25),
    (10, 27, 8, 21, 20, 99, 46),
    (13, 36, 11, 30, 29, 144, 67),
)

_F = Fraction
FIG1B = (
    (_F(67, 3), 48, _F(29, 3), 10, _F(11, 3), 12, _F(13, 3)),
    (_F(46, 3), 33, _F(20, 3), 7, _F(8, 3), 9, _F(10, 3)),
    (_F(25, 3), 18, _F(11, 3), 4, _F(5, 3), 6, _F(7, 3)),
    (_F(4, 3), 3, _F(2, 3), 1, _F(2, 3), 3, _F(4, 3)),
    (_F(7, 3), 6, _F(5, 3), 4, _F(11, 3), 18, _F(25, 3)),
    (_F(10, 3), 9, _F(8, 3), 7, _F(20, 3), 33, _F(46, 3)),
    (_F(13, 3), 12, _F(11, 3), 10, _F(29, 3), 48, _F(67, 3)),
)

FIG4_GAMMA = FareyPath(1, ((10, -3), (7, -2), (4, -1), (1, 0), (4, 1), (7, 2), (10, 3)), -3)
FIG4_DELTA = FareyPath(3, ((3, 4), (6, 9), (1, 2), (0, 3), (-1, 2), (-6, 9), (-3, 4)), -3)
FIG46_PATH = FareyPath(2, ((1, 0), (3, 2), (2, 2), (0, 1), (-2, 3), (-2, 2), (-3, 2), (-1, 0)))

# Diamond layout: row k, entries left to right; odd rows start half a cell
# further left than even rows.
FIG5_ROWS = (
    "0 0 0 0 0 0 0 0 0 0 0 0",
    "1 1 1 1 1 1 1 1 1 1 1 1 1",
    "1 3/2 5 1 5/2 1 6 1 3/2 5 1 5/2",
    "5 1/2 13/2 4 3/2 3/2 5 5 1/2 13/2 4 3/2 3/2",
    "3/2 3/2 5 5 1/2 13/2 4 3/2 3/2 5 5 1/2",
    "1 5/2 1 6 1 3/2 5 1 5/2 1 6 1 3/2",
    "1 1 1 1 1 1 1 1 1 1 1 1",
    "0 0 0 0 0 0 0 0 0 0 0 0 0",
)
# Display start column of each row in the diamond layout (half-cell units).
FIG5_OFFSETS = (2, 1, 2, 1, 2, 1, 2, 1)

DECAGON_ROWS = (
    "0 0 0 0 0 0 0 0 0 0",
    "2 2 2 2 2 2 2 2 2 2 2",
    "2 3 10 2 5 2 12 2 3 10",
    "10 1 13 8 3 3 10 10 1 13 8",
    "3 3 10 10 1 13 8 3 3 10",
    "2 5 2 12 2 3 10 2 5 2 12",
    "2 2 2 2 2 2 2 2 2 2",
    "0 0 0 0 0 0 0 0 0 0 0",
)
DECAGON_OFFSETS = (1, 0, 1, 0, 1, 0, 1, 0)

FIG6_LAYERS = (
    ((4, 11, 7, 10, 13), (5, 14, 9, 13, 17), (1, 3, 2, 3, 4), (2, 7, 5, 8, 11), (1, 4, 3, 5, 7)),
    ((10, 28, 18, 26, 34), (13, 37, 24, 35, 46), (3, 9, 6, 9, 12), (8, 26, 18, 28, 38), (5, 17, 12, 19, 26)),
    ((16, 45, 29, 42, 55), (21, 60, 39, 57, 75), (5, 15, 10, 15, 20), (14, 45, 31, 48, 65), (9, 30, 21, 33, 45)),
    ((6, 17, 11, 16, 21), (8, 23, 15, 22, 29), (2, 6, 4, 6, 8), (6, 19, 13, 20, 27), (4, 13, 9, 14, 19)),
    ((14, 40, 26, 38, 50), (19, 55, 36, 53, 70), (5, 15, 10, 15, 20), (16, 50, 34, 52, 70), (11, 35, 24, 37, 50)),
)
FIG6_PATHS = (
    FareyPath(1, ((1, 2), (1, 3), (0, 1), (-1, 4), (-1, 3))),
    FareyPath(1, ((2, 1), (5, 3), (3, 2), (4, 3), (5, 4))),
    FareyPath(1, ((1, 1), (2, 3), (3, 5), (1, 2), (2, 5))),
)

FIG8_LAYERS = (
    ((34, 13, 5, 2, 1, 1), (13, 5, 2, 1, 1, 2), (5, 2, 1, 1, 2, 5),
     (2, 1, 1, 2, 5, 13), (1, 1, 2, 5, 13, 34), (1, 2, 5, 13, 34, 89)),
    ((13, 5, 2, 1, 1, 2), (5, 2, 1, 1, 2, 5), (2, 1, 1, 2, 5, 13),
     (1, 1, 2, 5, 13, 34), (1, 2, 5, 13, 34, 89), (2, 5, 13, 34, 89, 233)),
    ((5, 2, 1, 1, 2, 5), (2, 1, 1, 2, 5, 13), (1, 1, 2, 5, 13, 34),
     (1, 2, 5, 13, 34, 89), (2, 5, 13, 34, 89, 233), (5, 13, 34, 89, 233, 610)),
)

# The displayed 65-hypertiling: three layers along the last axis.
H65_LAYERS = (
    ((0, -1, 0), (8, 0, -8), (0, 1, 0)),
    ((0, -1, 0), (1, 0, -1), (0, 1, 0)),
    ((0, -7, 0), (4, 0, -4), (0, 7, 0)),
)


def from_layers(layers) -> tuple:
    """entries[i][j][k] from a display whose blocks are k-layers with rows i and columns j."""
    K, I, J = len(layers), len(layers[0]), len(layers[0][0])
    return tuple(tuple(tuple(layers[k][i][j] for k in range(K)) for j in range(J)) for i in range(I))


def parse_row(s: str) -> list[Fraction]:
    return [Fraction(x) for x in s.split()]


def match_diamond(display: tuple[str, ...], offsets: tuple[int, ...], entry, period: int) -> Optional[int]:
    """Shift C making display row k, item t equal entry(i, j) with i + j = offset + 2t + C, i - j = k.

    Returns the first C in one period that works for every displayed number, or None.
    """
    rows = [parse_row(r) for r in display]
    for C in range(2 * period + 2):
        ok = True
        for k, (row, c) in enumerate(zip(rows, offsets)):
            for t, x in enumerate(row):
                s = c + 2 * t + C
                if (s - k) % 2:
                    ok = False
                    break
                j = (s - k) // 2
                if entry(j + k, j) != x:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return C
    return None


def clockwise_pair(rng: random.Random, L: int, compatible: bool):
    """gamma, delta with gamma and L*delta clockwise; separated when compatible, overlapping otherwise."""
    while True:
        g = random_clockwise_path(rng, rng.randint(1, 3), rng.randint(3, 6), rng.randint(-1, 0))
        d = random_clockwise_path(rng, rng.randint(1, 3), rng.randint(3, 6), rng.randint(-1, 0))
        hi, lo, first = Fraction(*g.first), Fraction(*g.last), Fraction(*d.first)
        if compatible:
            # L*delta strictly left of gamma's last point
            k = (lo / L - first) // 1 - rng.randint(1, 3)
            return g, translate(d, int(k))
        # L*delta's first point strictly inside gamma's span
        k = int(((hi + lo) / 2 / L - first) // 1)
        if lo < L * (first + k) < hi:
            return g, translate(d, k)
