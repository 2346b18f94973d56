from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricres.errors import DegeneratePolytope, OriginNotInterior
from toricres.fan import normal_fan_equal, validate
from toricres.instances import random_polytope
from toricres.polytope import (
    Polytope,
    dual_face,
    enumerate_flags,
    face_lattice,
    flag_sign,
    lattice_points,
    normal_fan,
    polar,
)

UNIT_SQUARE = Polytope.from_points([(0, 0), (1, 0), (0, 1), (1, 1)])
TRIANGLE = Polytope.from_points([(0, 0), (1, 0), (0, 1)])
CUBE = Polytope.from_points(list(product((0, 1), repeat=3)))


def test_face_lattice_examples():
    seg = face_lattice(Polytope.from_points([(0,), (1,)]))
    assert len(seg.faces[0]) == 2
    sq = face_lattice(UNIT_SQUARE)
    assert len(sq.faces[0]) == 4 and len(sq.faces[1]) == 4
    assert face_lattice(CUBE).f_vector() == (8, 12, 6)


def test_from_points_drops_interior_and_duplicate_points():
    p = Polytope.from_points([(0, 0), (2, 0), (0, 2), (1, 1), (0, 0), (1, 0)])
    assert sorted(p.vertices) == [(0, 0), (0, 2), (2, 0)]


def test_degenerate_polytope():
    with pytest.raises(DegeneratePolytope):
        normal_fan(Polytope.from_points([(0, 0), (1, 1)]))


def test_normal_fan_examples():
    f = normal_fan(UNIT_SQUARE)
    assert sorted(f.rays) == sorted([(1, 0), (0, 1), (-1, 0), (0, -1)])
    assert len(f.max_cones) == 4
    assert sorted(normal_fan(TRIANGLE).rays) == sorted([(1, 0), (0, 1), (-1, -1)])
    assert sorted(normal_fan(Polytope.from_points([(0,), (1,)])).rays) == [(-1,), (1,)]


def test_polar_examples():
    sq = Polytope.from_points([(-1, -1), (1, -1), (-1, 1), (1, 1)])
    cross = Polytope.from_points([(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert set(polar(sq).vertices) == set(cross.vertices)
    assert set(polar(cross).vertices) == set(sq.vertices)
    assert set(polar(polar(sq)).vertices) == set(sq.vertices)
    with pytest.raises(OriginNotInterior):
        polar(UNIT_SQUARE)


def test_flag_counts():
    assert len(enumerate_flags(face_lattice(UNIT_SQUARE))) == 8
    assert len(enumerate_flags(face_lattice(TRIANGLE))) == 6
    assert len(enumerate_flags(face_lattice(CUBE))) == 48


def test_flags_are_lexicographic_and_complete():
    lat = face_lattice(CUBE)
    flags = enumerate_flags(lat)
    keys = [[sorted(x) for x in fl] for fl in flags]
    assert keys == sorted(keys)
    for fl in flags:
        assert [lat.dim_of(x) for x in fl] == [0, 1, 2]
        assert all(a < b for a, b in zip(fl, fl[1:]))


def test_flag_sign_examples():
    lat = face_lattice(TRIANGLE)
    v0 = TRIANGLE.vertices.index((0, 0))
    v1 = TRIANGLE.vertices.index((1, 0))
    edge = next(e for e in lat.faces[1] if e == frozenset([v0, v1]))
    flag = (frozenset([v0]), edge)
    assert flag_sign(TRIANGLE, flag) == 1
    reversed_p = Polytope(TRIANGLE.vertices, orientation=((0, 1), (1, 0)))
    assert flag_sign(reversed_p, flag) == -1
    assert sum(flag_sign(UNIT_SQUARE, fl) for fl in enumerate_flags(face_lattice(UNIT_SQUARE))) == 0


def test_lattice_points_examples():
    assert len(lattice_points(UNIT_SQUARE)) == 4
    assert len(lattice_points(TRIANGLE.scaled(2))) == 6
    assert len(lattice_points(Polytope.from_points([(0,), (3,)]))) == 4


def test_dual_face_dimensions():
    p = Polytope.from_points(list(product((-1, 1), repeat=3)))
    lat = face_lattice(p)
    for d in range(3):
        for g in lat.faces[d]:
            h = dual_face(p, g)
            assert face_lattice(polar(p)).dim_of(h) == 2 - d


seeds = st.integers(0, 10**6)


@given(seeds, st.sampled_from([2, 3]))
def test_signed_flag_sum_vanishes(seed, n):
    import random

    p = random_polytope(random.Random(seed), n, max_facets=8)
    assert sum(flag_sign(p, fl) for fl in enumerate_flags(face_lattice(p))) == 0


@given(seeds, st.sampled_from([2, 3]))
def test_polarity_reverses_face_counts(seed, n):
    import random

    p = random_polytope(random.Random(seed), n, max_facets=8, centered=True)
    fv = face_lattice(p).f_vector()
    assert face_lattice(polar(p)).f_vector() == tuple(reversed(fv))


@given(seeds, st.sampled_from([2, 3]))
def test_normal_fan_is_complete_and_projective(seed, n):
    import random

    from toricres.fan import witness_polytope

    p = random_polytope(random.Random(seed), n, max_facets=8)
    f = normal_fan(p)
    report = validate(f)
    assert report.complete and report.projective
    assert normal_fan_equal(normal_fan(witness_polytope(f)), f)


@given(seeds)
def test_lattice_points_are_exactly_the_contained_ones(seed):
    import random

    p = random_polytope(random.Random(seed), 2, max_facets=8)
    pts = set(lattice_points(p))
    for x in product(range(-3, 4), repeat=2):
        assert (x in pts) == p.contains(x)
    assert all(isinstance(c, int) or Fraction(c).denominator == 1 for x in pts for c in x)
