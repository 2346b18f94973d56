"""Standard fans and seeded random instances for tests and the self-test suite."""
from __future__ import annotations

import random
from itertools import product

from .coloring import Coloring, violating_cone
from .fan import Fan
from .lattice import dot
from .polytope import Polytope, normal_fan


def projective_space(n: int) -> Fan:
    """Fan of P^n: rays e_1..e_n, -(e_1+...+e_n); every n-subset spans a cone."""
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple(-1 for _ in range(n))]
    cones = [[j for j in range(n + 1) if j != k] for k in range(n + 1)]
    return Fan.from_data(n, rays, cones)


def p1xp1() -> Fan:
    """Rays e1, e2, -e1, -e2 (in this order)."""
    return Fan.from_data(2, [(1, 0), (0, 1), (-1, 0), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def hirzebruch(a: int) -> Fan:
    return Fan.from_data(2, [(1, 0), (0, 1), (-1, a), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def cube_face_fan() -> Fan:
    """Cones over the six square facets of [-1, 1]^3."""
    rays = [v for v in product((1, -1), repeat=3)]
    cones = []
    for axis in range(3):
        for s in (1, -1):
            cones.append([j for j, v in enumerate(rays) if v[axis] == s])
    return Fan.from_data(3, rays, cones)


def support_numbers(f: Fan, p: Polytope) -> tuple:
    """a_j = -min_{u in P} <u, v_j>, so that P is the polytope of Σ a_j D_j."""
    out = []
    for v in f.rays:
        m = -min(dot(u, v) for u in p.vertices)
        if m.denominator != 1:
            raise ValueError("polytope is not a lattice polytope for this fan")
        out.append(int(m))
    return tuple(out)


def minkowski_sum(*polys: Polytope) -> Polytope:
    pts = [tuple(0 for _ in polys[0].vertices[0])]
    for p in polys:
        pts = {tuple(a + b for a, b in zip(x, v)) for x in pts for v in p.vertices}
    return Polytope.from_points(sorted(pts))


def random_polytope(rng: random.Random, n: int, box: int = 2, npoints: int | None = None,
                    max_facets: int = 10, centered: bool = False) -> Polytope:
    """Hull of random lattice points in [-box, box]^n, full-dimensional, few facets."""
    if npoints is None:
        npoints = n + 2 + rng.randint(0, 3)
    while True:
        pts = [tuple(rng.randint(-box, box) for _ in range(n)) for _ in range(npoints)]
        try:
            p = Polytope.from_points(pts)
        except Exception:
            continue
        if not p.is_full_dimensional or len(p.facets) > max_facets:
            continue
        if centered and not p.interior_contains_origin():
            continue
        return p


def random_coloring(rng: random.Random, f: Fan, multi: float = 0.3, structured: float = 0.5,
                    tries: int = 1000) -> Coloring:
    """A random simplicial coloring; ``multi`` is the chance a ray gets a second color.

    With probability ``structured`` the colors come from a random simplex S
    around the origin (ray v gets the index of the vertex of S minimizing
    <w, v>) with a few rays recolored, preferring samples that use all n+1
    colors; such colorings often have degree ±1, uniform ones rarely do.
    """
    n = f.dim
    region = rng.random() < structured
    fallback = None
    for _ in range(tries):
        if region:
            simplex = random_polytope(rng, n, box=3, npoints=n + 1, centered=True)
            ws = list(simplex.vertices)
            rng.shuffle(ws)
            base = [min(range(n + 1), key=lambda i: (dot(ws[i], v), i)) for v in f.rays]
            for j in rng.sample(range(f.nrays), rng.randint(0, min(2, f.nrays))):
                base[j] = rng.randint(0, n)
        else:
            base = [rng.randint(0, n) for _ in range(f.nrays)]
        colors = []
        for x in base:
            s = {x}
            if rng.random() < multi:
                s.add(rng.randint(0, n))
            colors.append(frozenset(s))
        c = Coloring(tuple(colors))
        if violating_cone(f, c) is None:
            # structured samples keep looking for one that uses every color
            if not region or len(set().union(*colors)) == n + 1:
                return c
            fallback = fallback or c
    if fallback is not None:
        return fallback
    raise RuntimeError("no simplicial coloring found")


def random_projective_fan(rng: random.Random, n: int, **kw):
    p = random_polytope(rng, n, **kw)
    return normal_fan(p), p


def random_semiample_instance(rng: random.Random, n: int = 2, box: int = 2, max_rays: int = 8):
    """(fan, semiample divisor) with the fan refining the divisor's normal fan.

    The fan is the normal fan of P + Q; the divisor is the one whose polytope
    is P, so it is semiample and usually not ample.  P is sometimes a segment
    or a point to produce lower-dimensional reductions.
    """
    while True:
        kind = rng.random()
        if kind < 0.25:
            a = tuple(rng.randint(-box, box) for _ in range(n))
            b = tuple(rng.randint(-box, box) for _ in range(n))
            p = Polytope.from_points([a, b])
        else:
            p = random_polytope(rng, n, box=box, npoints=n + 1 + rng.randint(0, 2), max_facets=max_rays)
        q = random_polytope(rng, n, box=box, npoints=n + 1 + rng.randint(0, 2), max_facets=max_rays)
        s = minkowski_sum(p, q)
        if len(s.facets) > max_rays:
            continue
        f = normal_fan(s)
        return f, support_numbers(f, p)


def random_squarefree_ideal(rng: random.Random, nrays: int, max_gens: int = 4):
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        size = rng.randint(1, min(3, nrays))
        gens.append(frozenset(rng.sample(range(nrays), size)))
    return gens


def discover_counterexample(seed: int = 1, max_rays: int = 8, box: int = 1, attempts: int = 3000):
    """Search random triples of small lattice polygons for a fan with no compatible degree-one coloring.

    The fan is the normal fan of P0 + P1 + P2 and degree i is the divisor whose
    polytope is Pi, so every degree is semiample on it.  Returns
    ``(attempt, fan, degrees, polygons, result)`` for the first hit, or None.
    """
    from .residue import search_degree_one

    rng = random.Random(seed)
    for attempt in range(attempts):
        polys = [random_polytope(rng, 2, box=box, npoints=rng.randint(3, 4)) for _ in range(3)]
        total = minkowski_sum(*polys)
        if len(total.facets) > max_rays:
            continue
        f = normal_fan(total)
        degrees = [support_numbers(f, p) for p in polys]
        res = search_degree_one(f, degrees)
        if not res.found:
            return attempt, f, degrees, polys, res
    return None
