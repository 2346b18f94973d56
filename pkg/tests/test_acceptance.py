"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Tolerances are exact integer equality throughout.  Instance counts and the
route-suite time budget are pinned below.
"""
import random
import time
from itertools import permutations

import pytest

from conftest import fixture_doc, fixture_path
from toricres import io
from toricres.coloring import (
    Coloring,
    cdeg,
    cdeg_cones,
    cdeg_flags,
    fan_coloring_on_polytope,
    identity_coloring_of_simplex,
    pl_degree_oracle,
    reduce_to_disjoint,
    standard_simplex,
)
from toricres.errors import InternalInconsistency
from toricres.fan import simplicialize, witness_polytope
from toricres.instances import (
    cube_face_fan,
    discover_counterexample,
    projective_space,
    random_coloring,
    random_squarefree_ideal,
)
from toricres.residue import Monomial, ideal_member_semiample, residue_monomials, search_degree_one
from toricres.selftest import (
    instance_rng,
    lambda_factors,
    product_pullback_instance,
    region_ideal,
    run_check,
)
from toricres.semiample import semiample_fan

ROUTE_INSTANCES = 200
ROUTE_BUDGET_S = 300.0
DUALITY_INSTANCES = 100
REFINEMENT_PAIRS = 50
MONOMIAL_INSTANCES = 100
PULLBACK_INSTANCES = 30
AMPLE_INSTANCES = 50
DIVISIBILITY_INSTANCES = 50
SEED = 0


def report(capsys, k, ok, detail):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def route_suite():
    start = time.perf_counter()
    res = run_check("routes", SEED, ROUTE_INSTANCES, dims=(2, 3))
    return res, time.perf_counter() - start


def test_criterion_01_calibration(capsys):
    got = {}
    for n in (1, 2, 3):
        f = projective_space(n)
        c = Coloring.of(list(range(1, n + 1)) + [0])
        p = standard_simplex(n)
        fc = identity_coloring_of_simplex(p)
        got[n] = (cdeg(f, c), cdeg_flags(p, fc), pl_degree_oracle(p, fc))
    res = residue_monomials(projective_space(2), [Monomial((1, 0, 0)), Monomial((0, 1, 0)), Monomial((0, 0, 1))])
    ok = all(v == (1, 1, 1) for v in got.values()) and res == 1
    report(capsys, 1, ok, f"identity-type degree (cones, flags, oracle) by n = {got}; residue P2 (x1,x2,x3) = {res}")


def test_criterion_02_three_routes(capsys, route_suite):
    res, elapsed = route_suite
    ok = res["instances"] >= ROUTE_INSTANCES and res["failed"] == 0 and elapsed < ROUTE_BUDGET_S
    report(capsys, 2, ok, f"{res['instances']} instances (n in 2,3, <= 10 rays), {res['failed']} disagreements, "
                          f"{elapsed:.1f}s (budget {ROUTE_BUDGET_S:.0f}s)")


def test_criterion_03_alternation(capsys, route_suite):
    res, _ = route_suite
    bad = [f for f in res["failures"] if any(v != [-f["detail"]["flags"]] * 2 for v in f["detail"]["swaps"].values())]
    ok = res["failed"] == 0 and not bad
    report(capsys, 3, ok, f"every transposition negates on {res['instances'] - len(bad)}/{res['instances']} instances")


def test_criterion_04_duality(capsys):
    res = run_check("duality", SEED, DUALITY_INSTANCES, dims=(2, 3))
    lam = {n: lambda_factors(n) for n in (2, 3)}
    lam_ok = all(lam[n] == {(-1) ** (n * (n + 1) // 2)} for n in (2, 3))
    ok = res["failed"] == 0 and lam_ok
    report(capsys, 4, ok, f"dual degree = flag degree on {res['instances'] - res['failed']}/{res['instances']}; "
                          f"lambda factors {lam}")


def test_criterion_05_refinement(capsys):
    res = run_check("refinement", SEED, REFINEMENT_PAIRS)
    f = cube_face_fan()
    p = witness_polytope(f)
    g, _ = simplicialize(f)
    colorings = [io.coloring_from_doc(fixture_doc("cube_coloring"), f)]
    rng = random.Random(SEED)
    colorings += [random_coloring(rng, f) for _ in range(10)]
    cube_bad = sum(
        cdeg_flags(p, fan_coloring_on_polytope(p, f, c)) != cdeg_cones(g, reduce_to_disjoint(c), 0)
        for c in colorings
    )
    ok = res["failed"] == 0 and cube_bad == 0
    report(capsys, 5, ok, f"{res['instances'] - res['failed']}/{res['instances']} random non-simplicial pairs, "
                          f"{len(colorings) - cube_bad}/{len(colorings)} cube-fan colorings agree")


def test_criterion_06_monomial_equivalence(capsys):
    res = run_check("monomial", SEED, MONOMIAL_INSTANCES)
    inconsistencies = sum("internal_inconsistency" in f["detail"] for f in res["failures"])
    pull_bad = members = 0
    for i in range(PULLBACK_INSTANCES):
        rng = instance_rng(SEED, "pullback", i)
        f, a = product_pullback_instance(rng)
        red = semiample_fan(f, a)
        gens = region_ideal(rng, red) if rng.random() < 0.5 else random_squarefree_ideal(rng, f.nrays)
        try:
            members += ideal_member_semiample(f, gens, a, reduction=red).member
        except InternalInconsistency:
            inconsistencies += 1
            pull_bad += 1
        if red.sigma_alpha.dim >= f.dim:
            pull_bad += 1  # a pullback must not be ample
    total = res["instances"] + PULLBACK_INSTANCES
    ok = res["failed"] == 0 and pull_bad == 0 and inconsistencies == 0
    report(capsys, 6, ok, f"{total} instances ({PULLBACK_INSTANCES} product pullbacks, {members} members among them), "
                          f"{res['failed'] + pull_bad} verdict mismatches, {inconsistencies} internal inconsistencies")


def test_criterion_07_ample(capsys):
    res = run_check("ample", SEED, AMPLE_INSTANCES, dims=(2, 3))
    report(capsys, 7, res["failed"] == 0,
           f"reduced fan = fan, pi = id, B_alpha = B on {res['instances'] - res['failed']}/{res['instances']}")


def test_criterion_08_divisibility(capsys):
    res = run_check("divisibility", SEED, DIVISIBILITY_INSTANCES, dims=(2, 3))
    report(capsys, 8, res["failed"] == 0,
           f"all admissible sub-tuples agree on {res['instances'] - res['failed']}/{res['instances']} tuples")


def test_criterion_09_counterexample(capsys):
    start = time.perf_counter()
    hit = discover_counterexample(seed=1, max_rays=8)
    elapsed = time.perf_counter() - start
    f = io.load(fixture_path("counterexample_fan"), "fan")
    degrees = [io.load(fixture_path(f"counterexample_degree{i}"), "divisor", f) for i in range(3)]
    frozen = search_degree_one(f, degrees)
    ok = hit is not None and not hit[4].found and not frozen.found
    found = f"attempt {hit[0]}, {hit[1].nrays} rays" if hit else "none"
    report(capsys, 9, ok, f"discovery (seed 1, <= 8 rays): {found} in {elapsed:.1f}s; "
                          f"frozen fixture ({f.nrays} rays): {frozen.as_dict()['status']}")


def test_criterion_10_worked_values(capsys):
    q = io.load(fixture_path("p1xp1_fan"), "fan")
    z = io.load(fixture_path("p1xp1_tuple"), "tuple", q)
    q_values = {residue_monomials(q, list(perm)) for perm in permutations(z)}
    p2 = io.load(fixture_path("p2_fan"), "fan")
    pair = (residue_monomials(p2, io.load(fixture_path("p2_tuple"), "tuple", p2)),
            residue_monomials(p2, io.load(fixture_path("p2_tuple_swapped"), "tuple", p2)))
    ok = q_values == {0} and pair == (1, -1)
    report(capsys, 10, ok, f"P1xP1 (x1x3, x2, x4) over all 6 orderings: {sorted(q_values)}; P2 pair: {pair}")
