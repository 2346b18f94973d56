from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from toricres.errors import IntegralityFailure, NonSquare, NoSolution, ZeroVector
from toricres.lattice import (
    det,
    det_sign,
    matvec,
    primitive,
    quotient_lattice,
    rank,
    solve_linear_exact,
)

small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def test_det_sign_examples():
    eye = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert det_sign(eye) == 1
    assert det_sign([eye[1], eye[0], eye[2]]) == -1
    assert det_sign([[2, 3], [2, 3]]) == 0


def test_det_sign_rejects_non_square():
    with pytest.raises(NonSquare):
        det_sign([[1, 2, 3], [4, 5, 6]])


def _leibniz(m):
    from itertools import permutations

    n = len(m)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = (-1) ** inv
        for i in range(n):
            term *= m[i][p[i]]
        total += term
    return total


@given(st.integers(1, 4).flatmap(square))
def test_det_matches_leibniz(m):
    assert det(m) == _leibniz(m)


@given(st.integers(2, 4).flatmap(square), st.data())
def test_row_swap_negates_sign(m, data):
    i, j = data.draw(st.lists(st.integers(0, len(m) - 1), min_size=2, max_size=2, unique=True))
    swapped = list(m)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert det_sign(swapped) == -det_sign(m)


def test_primitive_examples():
    assert primitive((2, -4)) == (1, -2)
    assert primitive((1, 0, 0)) == (1, 0, 0)
    assert primitive((-3, -3)) == (-1, -1)
    with pytest.raises(ZeroVector):
        primitive((0, 0))


@given(st.lists(small, min_size=1, max_size=4))
def test_primitive_idempotent(v):
    assume(any(v))
    p = primitive(v)
    assert primitive(p) == p
    g = 0
    for x in p:
        g = gcd(g, x)
    assert g == 1


def test_quotient_lattice_examples():
    q = quotient_lattice([], 2)
    assert q.target_dim == 2 and q((3, -5)) == (3, -5)
    q = quotient_lattice([(1, 0)], 2)
    assert q.target_dim == 1
    assert q((0, 1)) in ((1,), (-1,)) and q((1, 0)) == (0,)
    q = quotient_lattice([(1, 0), (0, 1)], 2)
    assert q.target_dim == 0 and q((4, 7)) == ()


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.lists(small, min_size=n, max_size=n), min_size=0, max_size=n))))
def test_quotient_annihilates_and_is_saturated(case):
    n, spanning = case
    q = quotient_lattice(spanning, n)
    assert q.target_dim == n - (rank(spanning) if spanning else 0)
    for v in spanning:
        assert not any(q(v))
    # surjective onto Z^k exactly when the k x k minors have gcd 1
    k = q.target_dim
    if k:
        g = 0
        for cols in combinations(range(n), k):
            g = gcd(g, det([[row[c] for c in cols] for row in q.matrix]))
        assert g == 1


def test_solve_linear_exact_examples():
    assert solve_linear_exact([[1, 0], [0, 1]], [1, 2]) == (1, 2)
    with pytest.raises(NoSolution):
        solve_linear_exact([[1, 0], [1, 0]], [0, 1])
    with pytest.raises(IntegralityFailure) as exc:
        solve_linear_exact([[1, 0], [-1, -2]], [0, -1])
    assert tuple(exc.value.solution) == (0, Fraction(1, 2))


@given(st.integers(1, 3).flatmap(square), st.lists(small, min_size=3, max_size=3))
def test_solve_roundtrip(m, x):
    n = len(m)
    x = x[:n]
    b = matvec(m, x)
    sol = solve_linear_exact(m, b, n, integral=False)
    assert matvec(m, sol) == list(b) or tuple(matvec(m, sol)) == tuple(b)
