"""Randomized property suites over seeded instances.

Each check builds one instance from its own ``random.Random`` and returns
``None`` on success or a JSON-able description of the mismatch.  Seeds are
derived per (suite seed, check, instance index), so a single failing
instance can be replayed in isolation.
"""
from __future__ import annotations

import random
from itertools import combinations, product

from .coloring import (
    Coloring,
    all_target_flags,
    cdeg,
    cdeg_cones,
    cdeg_flags,
    dual_map_degree,
    fan_coloring_on_polytope,
    pl_degree_oracle,
    reduce_to_disjoint,
    violating_cone,
)
from .errors import InternalInconsistency
from .fan import Fan, is_refinement, is_simplicial_fan, simplicialize, validate
from .instances import (
    random_coloring,
    random_polytope,
    random_projective_fan,
    random_semiample_instance,
    random_squarefree_ideal,
    support_numbers,
)
from .lattice import dot
from .polytope import Polytope, normal_fan
from .residue import Monomial, all_disjoint_refinements, ideal_member_semiample, residue_monomials
from .semiample import b_alpha_generators, irrelevant_ideal_generators, semiample_fan


def instance_rng(seed: int, check: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{check}:{index}")


def _swap(c: Coloring, i: int, j: int) -> Coloring:
    perm = {i: j, j: i}
    return Coloring(tuple(frozenset(perm.get(x, x) for x in s) for s in c.colors))


def check_routes(rng: random.Random, n: int):
    """Flags, every cone count, and the PL oracle agree; every transposition of colors negates."""
    f, p = random_projective_fan(rng, n, max_facets=10)
    c = random_coloring(rng, f)
    fc = fan_coloring_on_polytope(p, f, c)
    flags = cdeg_flags(p, fc)
    targets = all_target_flags(n)
    other_target = cdeg_flags(p, fc, targets[rng.randrange(len(targets))])
    g = f if is_simplicial_fan(f) else simplicialize(f)[0]
    d = reduce_to_disjoint(c)
    cones = [cdeg_cones(g, d, k) for k in range(n + 1)]
    oracle = pl_degree_oracle(p, fc, seed=rng.randrange(2**32))
    # every transposition of two colors negates, by both the flag and the cone count
    swaps = {}
    for i, j in combinations(range(n + 1), 2):
        swapped = _swap(c, i, j)
        swaps[(i, j)] = (
            cdeg_flags(p, fan_coloring_on_polytope(p, f, swapped)),
            cdeg_cones(g, reduce_to_disjoint(swapped), rng.randrange(n + 1)),
        )
    ok = (
        len(set(cones)) == 1
        and flags == cones[0] == oracle == other_target
        and all(s == (-flags, -flags) for s in swaps.values())
    )
    if ok:
        return None
    return {
        "rays": [list(v) for v in f.rays],
        "colors": [sorted(s) for s in c.colors],
        "flags": flags,
        "other_target": other_target,
        "cones": cones,
        "oracle": oracle,
        "swaps": {f"{i},{j}": list(v) for (i, j), v in swaps.items()},
    }


def check_duality(rng: random.Random, n: int):
    p = random_polytope(rng, n, max_facets=10, centered=True)
    f = normal_fan(p)
    fc = fan_coloring_on_polytope(p, f, random_coloring(rng, f))
    primal = cdeg_flags(p, fc)
    dual = dual_map_degree(p, fc)
    if primal == dual:
        return None
    return {"vertices": [[str(x) for x in v] for v in p.vertices], "primal": primal, "dual": dual}


def random_nonsimplicial_fan(rng: random.Random, attempts: int = 500):
    """Normal fan of a random non-simple 3-polytope (pyramids, octahedra and the like)."""
    for _ in range(attempts):
        p = random_polytope(rng, 3, box=1, npoints=rng.randint(5, 8), max_facets=10)
        f = normal_fan(p)
        if not is_simplicial_fan(f):
            return f, p
    raise RuntimeError("no non-simplicial fan found")


def check_refinement(rng: random.Random, n: int = 3):
    """Degree on a non-simplicial fan (via flags) equals degree on its simplicialization."""
    f, p = random_nonsimplicial_fan(rng)
    c = random_coloring(rng, f)
    g, _ = simplicialize(f)
    cmap = is_refinement(g, f)
    coarse = cdeg_flags(p, fan_coloring_on_polytope(p, f, c))
    fine = cdeg_cones(g, reduce_to_disjoint(c), 0)
    report = validate(g)
    if coarse == fine and report.simplicial and report.complete and len(cmap) == len(g.max_cones):
        return None
    return {"rays": [list(v) for v in f.rays], "colors": [sorted(s) for s in c.colors],
            "coarse": coarse, "fine": fine}


def product_pullback_instance(rng: random.Random):
    """A product fan Σ' x P^1 (or P^1 x Σ') with a divisor pulled back from one factor."""
    p = random_polytope(rng, 2, box=2, npoints=rng.randint(3, 5), max_facets=6)
    if rng.random() < 0.5:
        # pull back from the polygon factor: P x [0, 1]
        q = Polytope.from_points([v + (0,) for v in _int_vertices(p)] + [v + (1,) for v in _int_vertices(p)])
        f = normal_fan(q)
        a = support_numbers(f, Polytope.from_points([v + (0,) for v in _int_vertices(p)]))
    else:
        # pull back from the P^1 factor: segment {0} x [0, k]
        k = rng.randint(1, 2)
        q = Polytope.from_points([v + (0,) for v in _int_vertices(p)] + [v + (k,) for v in _int_vertices(p)])
        f = normal_fan(q)
        a = support_numbers(f, Polytope.from_points([(0, 0, 0), (0, 0, k)]))
    return f, a


def _int_vertices(p: Polytope):
    return [tuple(int(x) for x in v) for v in p.vertices]


def region_ideal(rng: random.Random, red) -> list:
    """Group rays by which vertex of a random simplex in N/(N ∩ L) minimizes on their image.

    Ideals generated by such groups are often members, unlike uniform ones.
    """
    k = red.q.target_dim
    if k == 0:
        return [frozenset([j]) for j in range(len(red.ray_images))]
    ws = list(random_polytope(rng, k, box=3, npoints=k + 1, centered=True).vertices)
    groups = {}
    for j, img in enumerate(red.ray_images):
        if any(img):
            i = min(range(k + 1), key=lambda t: (dot(ws[t], img), t))
        elif rng.random() < 0.3:
            i = rng.randrange(k + 1)
        else:
            continue  # an image at the origin lies in every cone
        groups.setdefault(i, set()).add(j)
    gens = [frozenset(g) for _, g in sorted(groups.items())]
    return gens or [frozenset([0])]


def check_monomial(rng: random.Random, n: int = 2):
    """Conditions (1), (3), (4), (5) agree (ideal_member_semiample raises otherwise)."""
    kind = rng.random()
    if kind < 0.2:
        f, a = product_pullback_instance(rng)
    elif kind < 0.35:
        f, p = random_projective_fan(rng, n, max_facets=8)
        a = support_numbers(f, p)
    else:
        f, a = random_semiample_instance(rng, n=n, max_rays=8)
    red = semiample_fan(f, a)
    if rng.random() < 0.5:
        gens = region_ideal(rng, red)
    else:
        gens = random_squarefree_ideal(rng, f.nrays)
    verdict = ideal_member_semiample(f, gens, a, reduction=red)
    # condition (4) over every cone of Σ_α gives the same answer as over maximal cones
    all_cones = not any(
        all(any(red.image_in(cone, j) for j in z) for z in gens) for cone in red.sigma_alpha.cones
    )
    if all_cones == verdict.member:
        return None
    return {"rays": [list(v) for v in f.rays], "a": list(a), "gens": [sorted(g) for g in gens]}


def check_ample(rng: random.Random, n: int):
    f, p = random_projective_fan(rng, n, max_facets=10)
    a = support_numbers(f, p)
    red = semiample_fan(f, a)
    same = red.sigma_alpha.rays == f.rays and set(red.sigma_alpha.max_cones) == set(f.max_cones)
    identity = all(red.pi_tilde[c] == c for c in f.cones)
    b_equal = b_alpha_generators(red, f) == irrelevant_ideal_generators(f)
    if same and identity and b_equal:
        return None
    return {"rays": [list(v) for v in f.rays], "a": list(a), "same_fan": same,
            "identity": identity, "b_equal": b_equal}


def _enlarge(rng: random.Random, f: Fan, base: list, extra: int):
    """Multiply random extra variables into the tuple while the coloring stays simplicial."""
    z = [list(m) for m in base]
    added = 0
    for _ in range(20 * extra):
        if added == extra:
            break
        i = rng.randrange(len(z))
        j = rng.randrange(f.nrays)
        z[i][j] += 1
        colors = tuple(frozenset(t for t in range(len(z)) if z[t][jj]) for jj in range(f.nrays))
        if violating_cone(f, Coloring(colors)) is None:
            added += 1
        else:
            z[i][j] -= 1
    return [Monomial(tuple(m)) for m in z], added


def check_divisibility(rng: random.Random, n: int):
    """Every admissible sub-tuple gives the same residue; permuting the tuple alternates it."""
    f, _ = random_projective_fan(rng, n, max_facets=8)
    added = 0
    while not added:
        c = random_coloring(rng, f, multi=0.0)
        base = [[int(i in s) for s in c.colors] for i in range(n + 1)]
        z, added = _enlarge(rng, f, base, extra=rng.randint(1, 3))
    value = residue_monomials(f, z)
    values = {residue_monomials(f, zp) for zp in all_disjoint_refinements(z)}
    i, j = rng.sample(range(n + 1), 2)
    perm = list(z)
    perm[i], perm[j] = perm[j], perm[i]
    flipped = residue_monomials(f, perm)
    if values == {value} and flipped == -value:
        return None
    return {"rays": [list(v) for v in f.rays], "z": [list(m.exponents) for m in z],
            "value": value, "refinements": sorted(values), "flipped": flipped}


def check_forced_failure(rng: random.Random, n: int):
    """Deliberately wrong claim (degree equals degree + 1), for exercising the failure path."""
    f, _ = random_projective_fan(rng, n, max_facets=8)
    c = random_coloring(rng, f)
    d = cdeg(f, c)
    return {"claimed": d + 1, "actual": d}


CHECKS = {
    "routes": check_routes,
    "duality": check_duality,
    "refinement": check_refinement,
    "monomial": check_monomial,
    "ample": check_ample,
    "divisibility": check_divisibility,
}

# checks whose instances are defined only in a fixed dimension
FIXED_DIM = {"refinement": 3, "monomial": 2}


def run_check(name: str, seed: int, count: int, dims=(2, 3)):
    fn = check_forced_failure if name == "forced_failure" else CHECKS[name]
    failures = []
    for i in range(count):
        n = FIXED_DIM.get(name, dims[i % len(dims)])
        try:
            detail = fn(instance_rng(seed, name, i), n)
        except InternalInconsistency as e:
            detail = {"internal_inconsistency": str(e)}
        if detail is not None:
            failures.append({"index": i, "n": n, "detail": detail})
    return {"instances": count, "failed": len(failures), "failures": failures}


def run_suite(seed: int = 0, count: int = 20, dims=(2, 3), names=None, force_failure: bool = False):
    names = list(names or CHECKS)
    if force_failure:
        names.append("forced_failure")
    checks = {name: run_check(name, seed, count, dims) for name in names}
    return {
        "seed": seed,
        "count": count,
        "dims": list(dims),
        "checks": checks,
        "ok": all(r["failed"] == 0 for r in checks.values()),
    }


def lambda_factors(n: int) -> set:
    """Flag-sign ratios sgn(X)/sgn(X*) over every flag of a centered simplex and the cube."""
    from .coloring import flag_sign_duality_factors, standard_simplex

    simplex = standard_simplex(n)
    bc = [sum(v[i] for v in simplex.vertices) for i in range(n)]
    centered = Polytope.from_points(
        [tuple((n + 1) * x - b for x, b in zip(v, bc)) for v in simplex.vertices]
    )
    cube = Polytope.from_points(list(product((-1, 1), repeat=n)))
    out = set()
    for p in (centered, cube):
        out |= flag_sign_duality_factors(p)
    return out


__all__ = [
    "CHECKS",
    "check_ample",
    "check_divisibility",
    "check_duality",
    "check_monomial",
    "check_refinement",
    "check_routes",
    "instance_rng",
    "lambda_factors",
    "product_pullback_instance",
    "region_ideal",
    "random_nonsimplicial_fan",
    "run_check",
    "run_suite",
]
