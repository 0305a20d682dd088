import itertools
import random

import pytest
from hypothesis import given, strategies as st

from farey_tilings.farey import FareyPath, PathError
from farey_tilings.hypertilings import (
    FIB_CUBE,
    H_GENERATORS,
    I2,
    J,
    P_SHIFT,
    Q,
    UNIT_CUBE,
    UNIT_CUBE_DAGGER,
    Hypertiling,
    HypertilingError,
    act_triple,
    as_cube,
    compose,
    construct_hypertiling,
    cross_section,
    cube_display,
    cube_from_display,
    decompose_hypertiling,
    face_dets,
    fib,
    fibonacci_hypertiling,
    fibonacci_path,
    h_orbit,
    hyper_recurrence,
    hyperdet,
    hyperdet_layers,
    invert,
    is_synchronised,
    is_tame_hypertiling,
    make_An,
    normalize_unit_cube,
    permute_cube,
    permute_triple,
    sl2_cross_section_cubes,
    stabilizer_search,
    stabilizes,
    unit_cube_stabilizer,
    unsynchronised_stacks,
    verify_hypertiling,
)
from farey_tilings.tilings import is_tame, verify_n_tiling

from helpers import FIG6_LAYERS, FIG6_PATHS, H65_LAYERS, from_layers, random_path, random_sl2, sl2

small = st.integers(-20, 20)
cubes = st.tuples(*[small] * 8).map(lambda x: cube_from_display(*x))
triples = st.tuples(sl2, sl2, sl2)


def _blk(x, p):
    return ((0, -x, 0), (p, 0, -p), (0, x, 0))


H49 = Hypertiling(from_layers((_blk(1, 8), _blk(1, 1), _blk(1, 8))))


def _det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


@given(cubes)
def test_hyperdet_formulas_agree(c):
    assert hyperdet(c) == hyperdet_layers(c)


def test_hyperdet_formulas_agree_1000():
    rng = random.Random(1000)
    for _ in range(1000):
        c = cube_from_display(*(rng.randint(-50, 50) for _ in range(8)))
        assert hyperdet(c) == hyperdet_layers(c)


@given(cubes, triples)
def test_hyperdet_invariance(c, t):
    assert hyperdet(act_triple(t, c)) == hyperdet(c)


def test_hyperdet_invariance_500():
    rng = random.Random(500)
    for _ in range(500):
        c = cube_from_display(*(rng.randint(-9, 9) for _ in range(8)))
        t = tuple(random_sl2(rng) for _ in range(3))
        assert hyperdet(act_triple(t, c)) == hyperdet(c)


@given(cubes, st.tuples(*[st.integers(-4, 4)] * 12))
def test_hyperdet_scales_with_determinants(c, x):
    t = tuple(((x[4 * n], x[4 * n + 1]), (x[4 * n + 2], x[4 * n + 3])) for n in range(3))
    factor = (_det2(t[0]) * _det2(t[1]) * _det2(t[2])) ** 2
    assert hyperdet(act_triple(t, c)) == factor * hyperdet(c)


def test_known_values():
    assert hyperdet(UNIT_CUBE) == 1 == hyperdet(UNIT_CUBE_DAGGER)
    assert hyperdet(FIB_CUBE) == 5
    assert all(hyperdet(make_An(n)) == 5 for n in range(-4, 5))
    assert cube_display(cube_from_display(*range(8))) == tuple(range(8))


@given(cubes, triples, st.permutations([0, 1, 2]))
def test_permutation_compatibility(c, t, perm):
    assert permute_cube(act_triple(t, c), perm) == act_triple(
        tuple(t[perm[n]] for n in range(3)), permute_cube(c, perm))
    assert permute_triple(tuple(t[perm[n]] for n in range(3)), perm) == t


@given(triples)
def test_normalize_unit_cube(t):
    A = act_triple(t, UNIT_CUBE)
    w = normalize_unit_cube(A)
    assert act_triple(w, UNIT_CUBE) == A
    # the witness differs from t by a stabilizer element
    assert stabilizes(compose(invert(t), w), UNIT_CUBE)


def test_normalize_special_cubes():
    for c in (UNIT_CUBE, UNIT_CUBE_DAGGER, make_An(0), act_triple((J, I2, J), UNIT_CUBE)):
        if hyperdet(c) == 1:
            assert act_triple(normalize_unit_cube(c), UNIT_CUBE) == c
    # cubes with zero entries in awkward places
    for disp in itertools.product((-1, 0, 1), repeat=8):
        c = cube_from_display(*disp)
        if hyperdet(c) == 1:
            assert act_triple(normalize_unit_cube(c), UNIT_CUBE) == c


def test_normalize_rejects_other_determinants():
    with pytest.raises(ValueError):
        normalize_unit_cube(FIB_CUBE)


def test_stabilizer():
    assert set(stabilizer_search(2)) == set(unit_cube_stabilizer())
    assert all(stabilizes(t, UNIT_CUBE) for t in unit_cube_stabilizer())
    assert not stabilizes((J, I2, I2), UNIT_CUBE)
    assert act_triple((J, J, J), UNIT_CUBE) == UNIT_CUBE_DAGGER


def test_unit_cube_hypertiling_display():
    h = construct_hypertiling(UNIT_CUBE, *FIG6_PATHS)
    assert h.entries == from_layers(FIG6_LAYERS)
    assert verify_hypertiling(h) == 1 and is_tame_hypertiling(h)
    assert [verify_n_tiling(cross_section(h, 2, k)) for k in range(5)] == [1, 6, 15, 2, 10]
    for axis in range(3):
        for x in range(5):
            assert is_tame(cross_section(h, axis, x))


def test_stabilizer_invariance_of_construction():
    u, v, w = FIG6_PATHS
    h = construct_hypertiling(UNIT_CUBE, u, v, w)
    for s in unit_cube_stabilizer():
        moved = [p if m == I2 else -p for p, m in zip((u, v, w), s)]
        assert construct_hypertiling(UNIT_CUBE, *moved) == h
    # non-stabilizer changes alter the hypertiling
    assert construct_hypertiling(UNIT_CUBE, -u, v, w) != h
    assert construct_hypertiling(UNIT_CUBE, u.act(((1, 1), (0, 1))), v, w) != h
    assert construct_hypertiling(UNIT_CUBE, u, v.act(J), w) != h


def random_hyper(rng):
    while True:
        A = cube_from_display(*(rng.randint(-3, 3) for _ in range(8)))
        if hyperdet(A):
            break
    ps = [random_path(rng, 1, rng.randint(3, 5), rng.randint(-1, 0)) for _ in range(3)]
    return A, ps, construct_hypertiling(A, *ps)


@given(st.integers(0, 2**32 - 1))
def test_construct_decompose(seed):
    A, ps, h = random_hyper(random.Random(seed))
    assert verify_hypertiling(h) == hyperdet(A)
    assert is_tame_hypertiling(h)
    A2, u, v, w = decompose_hypertiling(h)
    assert construct_hypertiling(A2, u, v, w) == h
    assert hyperdet(A2) == hyperdet(A)


@given(st.integers(0, 2**32 - 1))
def test_fiber_recurrences(seed):
    A, ps, h = random_hyper(random.Random(seed))
    try:
        rec = hyper_recurrence(h)
    except HypertilingError as e:
        assert "zero slice" in str(e)
        return
    for axis, coeffs in enumerate(rec):
        for x, lam in coeffs.items():
            for i, j, k in itertools.product(*h.ranges):
                idx = [i, j, k]
                if idx[axis] != x:
                    continue
                lo, hi = list(idx), list(idx)
                lo[axis] -= 1
                hi[axis] += 1
                assert h[tuple(lo)] + h[tuple(hi)] == lam * h[tuple(idx)]


def test_unit_cube_hypertiling_recurrence():
    rec = hyper_recurrence(construct_hypertiling(UNIT_CUBE, *FIG6_PATHS))
    assert len(rec) == 3 and all(len(r) == 3 for r in rec)


def test_65_display():
    h = Hypertiling(from_layers(H65_LAYERS))
    assert all(is_tame(cross_section(h, a, x)) for a in range(3) for x in range(3))
    assert [verify_n_tiling(cross_section(h, 2, k)) for k in range(3)] == [8, 1, 28]
    assert not is_synchronised(h) and not is_tame_hypertiling(h)
    stacks = unsynchronised_stacks(h)
    assert ((-1, 8), (-1, 1), (-7, 4)) in stacks  # the (8,-1;1,-1;4,-7) stack with its columns swapped
    assert sorted({hyperdet(h.block(i, j, k)) for i in (0, 1) for j in (0, 1) for k in (0, 1)}) == [9, 49]
    with pytest.raises(HypertilingError):
        verify_hypertiling(h)


def test_unsynchronised_49():
    assert verify_hypertiling(H49) == 49
    assert all(is_tame(cross_section(H49, a, x)) for a in range(3) for x in range(3))
    assert not is_synchronised(H49) and not is_tame_hypertiling(H49)
    with pytest.raises(HypertilingError):
        decompose_hypertiling(H49)


def test_fibonacci():
    assert [fib(n) for n in range(-5, 6)] == [5, -3, 2, -1, 1, 0, 1, 1, 2, 3, 5]
    h = fibonacci_hypertiling(0, [(0, 4)] * 3)
    assert verify_hypertiling(h) == 5 and is_tame_hypertiling(h)
    p = fibonacci_path(0, 4)
    assert construct_hypertiling(FIB_CUBE, p, p, p) == h
    A, u, v, w = decompose_hypertiling(h)
    assert hyperdet(A) == 5 and construct_hypertiling(A, u, v, w) == h


def test_fibonacci_cubes():
    for n in range(-4, 5):
        assert face_dets(make_An(n)) == [1] * 6
        assert len(h_orbit(make_An(n))) == (16 if n == 0 else 32)
        for c in h_orbit(make_An(n)):
            assert face_dets(c) == [1] * 6


def test_all_unimodular_cubes_are_fibonacci_orbits():
    orbits = set().union(*(h_orbit(make_An(n)) for n in range(-4, 5)))
    assert len(orbits) == 144
    assert h_orbit(make_An(2)) == h_orbit(make_An(-2))
    for B in (5, 13, 40):
        small = {c for c in orbits if max(abs(x) for x in cube_display(c)) <= B}
        assert set(sl2_cross_section_cubes(B)) == small


def test_h_orbit_closed():
    orb = h_orbit(make_An(1))
    for g in H_GENERATORS:
        assert {act_triple(g, c) for c in orb} == orb


def _brute_cubes(B):
    r = range(-B, B + 1)
    out = set()
    for a, b, c, d in itertools.product(r, repeat=4):
        if a * d - b * c != 1:
            continue
        for e, f, g, h in itertools.product(r, repeat=4):
            cube = cube_from_display(a, b, c, d, e, f, g, h)
            if face_dets(cube) == [1] * 6:
                out.add(cube)
    return out


def test_cube_enumeration_matches_brute_force():
    for B in (2, 3):
        assert set(sl2_cross_section_cubes(B)) == _brute_cubes(B)


def test_hypertiling_validation():
    with pytest.raises(HypertilingError):
        Hypertiling(((((1, 2),),),))
    with pytest.raises(HypertilingError):
        Hypertiling((((1, 2), (3, 4)), ((5, 6), (7,))))
    with pytest.raises(HypertilingError):
        construct_hypertiling(cube_from_display(*[0] * 8), *FIG6_PATHS)
    with pytest.raises(PathError):
        construct_hypertiling(UNIT_CUBE, FareyPath(2, ((2, 0), (0, 1))), *FIG6_PATHS[1:])


def test_serialisation():
    h = construct_hypertiling(UNIT_CUBE, *FIG6_PATHS)
    assert Hypertiling.from_dict(h.to_dict()) == h
    g = Hypertiling(h.entries, (-1, -2, 0))
    assert g.to_dict()["ranges"] == [[-1, 3], [-2, 2], [0, 4]]
    assert Hypertiling.from_dict(g.to_dict()) == g
    assert as_cube([[[1, 0], [0, 0]], [[0, 0], [0, 1]]]) == UNIT_CUBE


def _positive_sample(rng, n=3, hi=6):
    """Fill an n*n*n array in order, drawing entries at random unless some cross-section window forces them.

    Every 2x2 window of every cross section gets the determinant of that section's corner window, so
    accepted arrays have all cross sections integer tilings.
    """
    m = {}
    for idx in itertools.product(range(n), repeat=3):
        forced = set()
        for ax in range(3):
            a, b = [x for x in range(3) if x != ax]
            i, j = idx[a], idx[b]
            if i == 0 or j == 0 or (i, j) == (1, 1):
                continue

            def at(di, dj):
                p = list(idx)
                p[a], p[b] = di, dj
                return m[tuple(p)]

            num = at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0) + at(i - 1, j) * at(i, j - 1)
            if num % at(i - 1, j - 1):
                return None
            forced.add(num // at(i - 1, j - 1))
        if len(forced) > 1:
            return None
        v = forced.pop() if forced else rng.randint(1, hi)
        if v <= 0:
            return None
        m[idx] = v
    return Hypertiling(tuple(tuple(tuple(m[i, j, k] for k in range(n)) for j in range(n)) for i in range(n)))


def test_positive_hypertilings_with_tiling_sections_are_tame():
    rng = random.Random(2024)
    seen = 0
    for _ in range(40000):
        h = _positive_sample(rng)
        if h is None:
            continue
        assert all(verify_n_tiling(cross_section(h, a, x)) is not None for a in range(3) for x in range(3))
        try:
            N = verify_hypertiling(h)
        except HypertilingError:
            continue
        if N == 0:
            continue
        seen += 1
        assert is_tame_hypertiling(h), h
    assert seen > 500
