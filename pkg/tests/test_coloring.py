import random
from itertools import permutations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricres.coloring import (
    Coloring,
    all_target_flags,
    canonical_target_flag,
    cdeg,
    cdeg_cones,
    cdeg_flags,
    cdeg_flags_fan,
    dual_map_degree,
    fan_coloring_on_polytope,
    flag_sign_duality_factors,
    identity_coloring_of_simplex,
    pl_degree_oracle,
    psi_of_face,
    reduce_to_disjoint,
    standard_simplex,
    violating_cone,
)
from toricres.errors import NotDisjoint, NotSimplicialColoring, NotSimplicialFan
from toricres.fan import Fan, simplicialize
from toricres.instances import cube_face_fan, p1xp1, projective_space, random_coloring, random_projective_fan
from toricres.polytope import Polytope, normal_fan


def identity_fan_coloring(n):
    """Ray e_i gets color i, the ray -(e_1 + ... + e_n) gets color 0."""
    return Coloring.of(list(range(1, n + 1)) + [0])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_calibration_identity_coloring_is_plus_one(n):
    f = projective_space(n)
    c = identity_fan_coloring(n)
    assert cdeg(f, c) == 1
    assert all(cdeg_cones(f, c, k) == 1 for k in range(n + 1))
    p = standard_simplex(n)
    fc = identity_coloring_of_simplex(p)
    assert cdeg_flags(p, fc) == 1
    assert pl_degree_oracle(p, fc) == 1
    assert fan_coloring_on_polytope(p, f, c) == fc


def test_spec_p2_coloring_is_the_identity_type():
    # colors 0,1,2 on (1,0),(0,1),(-1,-1) differ from the identity type by an even permutation
    assert cdeg(projective_space(2), Coloring.of([0, 1, 2])) == 1


def test_swapping_colors_on_the_simplex():
    p = standard_simplex(2)
    fc = identity_coloring_of_simplex(p)
    swap = {0: 1, 1: 0, 2: 2}
    swapped = [frozenset(swap[i] for i in s) for s in fc]
    assert cdeg_flags(p, swapped) == -1


def test_is_simplicial_examples():
    p2 = projective_space(2)
    assert violating_cone(p2, Coloring.of([0, 1, 2])) is None
    bad = violating_cone(p2, Coloring.of([{0, 1}, 2, 2]))
    assert bad.cone == frozenset([0, 1])
    assert bad.witness == (0, 0, 1)
    assert violating_cone(p1xp1(), Coloring.of([0, 1, 2, 0])) is None


def test_psi_of_face_unions_the_ray_colors():
    f = p1xp1()
    c = Coloring.of([{1}, {0, 2}, {2}, {0}])
    assert psi_of_face(f, c, [0]) == frozenset([1])
    assert psi_of_face(f, c, [1, 2]) == frozenset([0, 2])
    c2 = Coloring.of([{0, 2}, {0, 2}, {1}, {1}])
    assert psi_of_face(f, c2, [0, 1]) == frozenset([0, 2])


def test_cdeg_cones_examples():
    p2 = projective_space(2)
    c = Coloring.of([0, 1, 2])
    assert cdeg_cones(p2, c, 2) == 1
    assert cdeg_cones(p2, c, 1) == 1
    c = Coloring.of([0, 1, 0, 2])
    assert cdeg_cones(p1xp1(), c, 0) == 0
    assert cdeg_cones(p1xp1(), c, 1) == 0
    assert cdeg(p1xp1(), c) == 0


def test_cdeg_cones_preconditions():
    with pytest.raises(NotDisjoint):
        cdeg_cones(projective_space(2), Coloring.of([{0, 1}, 1, 2]), 0)
    with pytest.raises(NotSimplicialFan):
        cdeg_cones(cube_face_fan(), Coloring.of([0] * 8), 0)
    with pytest.raises(NotSimplicialColoring):
        cdeg(projective_space(2), Coloring.of([{0, 1}, 2, 2]))


def test_reduce_to_disjoint_examples():
    c = Coloring.of([0, 1, 2])
    assert reduce_to_disjoint(c) == c
    assert reduce_to_disjoint(Coloring.of([{0, 2}, 1, 1])).colors[0] == frozenset([0])
    multi = Coloring.of([{0, 1}, {1}, {2}])
    assert reduce_to_disjoint(multi) == Coloring.of([0, 1, 2])
    # that P^2 coloring is not simplicial itself: cone(ρ1, ρ3) sees 0, 1 and 2
    with pytest.raises(NotSimplicialColoring):
        cdeg(projective_space(2), multi)
    hexagon = Fan.from_data(2, [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
                            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])
    multi = Coloring.of([0, 0, 1, 2, {0, 2}, {0, 2}])
    assert cdeg(hexagon, multi) == cdeg(hexagon, reduce_to_disjoint(multi)) == 1


def test_square_example_flags_match_oracle():
    sq = Polytope.from_points([(0, 0), (1, 0), (0, 1), (1, 1)])
    # left, bottom, right, top
    by_normal = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 1}
    fc = [frozenset([by_normal[f.normal]]) for f in sq.facets]
    assert cdeg_flags(sq, fc) == pl_degree_oracle(sq, fc) == 0


def test_two_colors_give_degree_zero():
    p = Polytope.from_points([(0, 0), (2, 0), (2, 1), (0, 2)])
    fc = [frozenset([i % 2]) for i in range(len(p.facets))]
    assert pl_degree_oracle(p, fc) == 0 == cdeg_flags(p, fc)


def test_cube_fan_routes_agree():
    f = cube_face_fan()
    g, _ = simplicialize(f)
    octahedron = Polytope.from_points([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    assert normal_fan(octahedron).max_cones  # its normal fan is the cube fan
    for colors in product(range(4), repeat=8):
        c = Coloring.of(colors)
        if violating_cone(f, c) is not None or random.Random(hash(colors)).random() > 0.05:
            continue
        assert cdeg_flags_fan(f, c, octahedron) == cdeg_cones(g, c, 0)


@pytest.mark.parametrize("n", [2, 3])
def test_target_flag_independence_on_simplex(n):
    p = standard_simplex(n)
    fc = identity_coloring_of_simplex(p)
    assert canonical_target_flag(n) in all_target_flags(n)
    assert {cdeg_flags(p, fc, y) for y in all_target_flags(n)} == {1}


@pytest.mark.parametrize("n, lam", [(2, -1), (3, 1)])
def test_flag_sign_duality_factor(n, lam):
    q = Polytope.from_points([(-1,) * n] + [tuple(n + 1 if i == j else -1 for j in range(n)) for i in range(n)])
    assert flag_sign_duality_factors(q) == {lam}
    assert lam == (-1) ** (n * (n + 1) // 2)


def test_dual_degree_of_centered_simplex():
    q = Polytope.from_points([(-1, -1), (2, -1), (-1, 2)])
    fc = identity_coloring_of_simplex(q)
    assert dual_map_degree(q, fc) == cdeg_flags(q, fc) == 1


seeds = st.integers(0, 10**6)


@given(seeds, st.sampled_from([2, 3]))
def test_three_routes_agree(seed, n):
    rng = random.Random(seed)
    f, p = random_projective_fan(rng, n, max_facets=8)
    c = random_coloring(rng, f)
    fc = fan_coloring_on_polytope(p, f, c)
    d = cdeg(f, c)
    assert cdeg_flags(p, fc) == d == pl_degree_oracle(p, fc, seed=seed)
    g = simplicialize(f)[0]
    assert {cdeg_cones(g, reduce_to_disjoint(c), k) for k in range(n + 1)} == {d}


@given(seeds, st.sampled_from([2, 3]))
def test_degree_is_alternating(seed, n):
    rng = random.Random(seed)
    f, _ = random_projective_fan(rng, n, max_facets=8)
    c = random_coloring(rng, f)
    d = cdeg(f, c)
    for perm in permutations(range(n + 1)):
        inv = sum(1 for i in range(n + 1) for j in range(i + 1, n + 1) if perm[i] > perm[j])
        assert cdeg(f, c.relabel(dict(enumerate(perm)))) == (-1) ** inv * d


@given(seeds)
def test_degree_does_not_depend_on_the_polytope(seed):
    rng = random.Random(seed)
    f, p = random_projective_fan(rng, 2, max_facets=8)
    c = random_coloring(rng, f)
    bigger = Polytope.from_points([tuple(3 * x for x in v) for v in p.vertices]).translate((1, -2))
    assert cdeg_flags_fan(f, c, p) == cdeg_flags_fan(f, c, bigger) == cdeg_flags_fan(f, c)
