"""Fans: storage by maximal cones, validation, refinements, simplicialization."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import lcm

from .errors import MalformedFan, NotProjective, NotRefinement
from .lattice import det, dot, primitive, rank, rational_kernel, row_reduce, solve_rational
from .lp import feasible_point
from .polytope import Polytope, cone_facets


class ConeData:
    """Linear-algebra view of the cone spanned by some generators of a fan."""

    def __init__(self, gens, dim):
        self.gens = [tuple(g) for g in gens]
        self.dim = dim
        self.rank = rank(self.gens) if self.gens else 0
        self.equations = [primitive(w) for w in rational_kernel(self.gens, dim)] if self.gens else [
            tuple(int(i == j) for j in range(dim)) for i in range(dim)
        ]
        self.facets = []  # (ambient normal, local generator indices)
        if self.rank >= 1:
            _, chart = row_reduce(self.gens)
            proj = [tuple(g[c] for c in chart) for g in self.gens]
            for normal, idx in cone_facets(proj):
                amb = [0] * dim
                for c, x in zip(chart, normal):
                    amb[c] = x
                self.facets.append((tuple(amb), idx))

    def contains(self, x) -> bool:
        if any(dot(w, x) != 0 for w in self.equations):
            return False
        return all(dot(n, x) >= 0 for n, _ in self.facets)

    def contains_in_interior(self, x) -> bool:
        if not self.contains(x):
            return False
        return all(dot(n, x) > 0 for n, _ in self.facets)


@dataclass(frozen=True)
class Fan:
    """A rational fan given by primitive ray generators and its maximal cones.

    Ray indices are 0-based.  ``max_cones`` holds frozensets of ray indices.
    """

    dim: int
    rays: tuple
    max_cones: tuple

    @classmethod
    def from_data(cls, dim, rays, max_cones) -> "Fan":
        prim = tuple(primitive(r) for r in rays)
        if any(len(r) != dim for r in prim):
            raise MalformedFan("ray of wrong dimension")
        if len(set(prim)) != len(prim):
            raise MalformedFan("repeated ray")
        cones = []
        for c in max_cones:
            s = frozenset(int(i) for i in c)
            if any(i < 0 or i >= len(prim) for i in s):
                raise MalformedFan(f"cone {sorted(s)} refers to an unknown ray")
            cones.append(s)
        cones = sorted(set(cones), key=sorted)
        maximal = [c for c in cones if not any(c < d for d in cones)]
        return cls(dim, prim, tuple(maximal))

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def same_as(self, other: "Fan") -> bool:
        return self.rays == other.rays and set(self.max_cones) == set(other.max_cones)

    def cone_data(self, cone) -> ConeData:
        cache = self._cone_cache
        key = frozenset(cone)
        if key not in cache:
            cache[key] = ConeData([self.rays[i] for i in sorted(key)], self.dim)
        return cache[key]

    @cached_property
    def _cone_cache(self):
        return {}

    def faces_of(self, cone) -> set:
        """All faces of a cone (as ray-index sets), the zero cone included."""
        cone = frozenset(cone)
        data = self.cone_data(cone)
        order = sorted(cone)
        facet_sets = [frozenset(order[i] for i in idx) for _, idx in data.facets]
        faces = {cone, frozenset()}
        frontier = set(facet_sets)
        while frontier:
            faces |= frontier
            nxt = set()
            for g in frontier:
                for f in facet_sets:
                    h = g & f
                    if h not in faces:
                        nxt.add(h)
            frontier = nxt
        return faces

    @cached_property
    def cones(self) -> tuple:
        """Every cone of the fan, sorted by dimension then ray indices."""
        allc = set()
        for c in self.max_cones:
            allc |= self.faces_of(c)
        return tuple(sorted(allc, key=lambda s: (len(s), sorted(s))))

    def cone_dim(self, cone) -> int:
        return self.cone_data(cone).rank

    def walls(self, cone):
        """Codimension-one faces of a maximal cone, as ray-index sets."""
        data = self.cone_data(cone)
        order = sorted(cone)
        return [frozenset(order[i] for i in idx) for _, idx in data.facets]


@dataclass(frozen=True)
class FanReport:
    rational: bool
    complete: bool
    simplicial: bool
    projective: bool

    def as_dict(self):
        return {
            "rational": self.rational,
            "complete": self.complete,
            "simplicial": self.simplicial,
            "projective": self.projective,
        }


def _is_pointed(f: Fan, cone) -> bool:
    gens = [f.rays[i] for i in sorted(cone)]
    a_ub = [tuple(-x for x in g) for g in gens]
    return feasible_point(a_ub, [-1] * len(gens), nvars=f.dim) is not None


def _meet_properly(f: Fan, c1, c2) -> bool:
    common = c1 & c2
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for i in common:
        a_eq.append(f.rays[i])
        b_eq.append(0)
    for i in c1 - common:
        a_ub.append(tuple(-x for x in f.rays[i]))
        b_ub.append(-1)
    for i in c2 - common:
        a_ub.append(f.rays[i])
        b_ub.append(-1)
    return feasible_point(a_ub, b_ub, a_eq, b_eq, nvars=f.dim) is not None


def is_simplicial_fan(f: Fan) -> bool:
    for c in f.max_cones:
        if len(c) != f.cone_dim(c):
            return False
    return True


def wall_adjacency(f: Fan) -> dict:
    """Map each wall (ray-index set) to the maximal cones containing it."""
    table = {}
    for c in f.max_cones:
        if f.cone_dim(c) != f.dim:
            continue
        for w in f.walls(c):
            table.setdefault(w, []).append(c)
    return table


def is_complete(f: Fan) -> bool:
    if not f.max_cones or any(f.cone_dim(c) != f.dim for c in f.max_cones):
        return False
    if f.dim == 0:
        return True
    table = wall_adjacency(f)
    if any(len(cs) != 2 for cs in table.values()):
        return False
    # connectivity of the wall-adjacency graph
    seen = {f.max_cones[0]}
    stack = [f.max_cones[0]]
    while stack:
        c = stack.pop()
        for w in f.walls(c):
            for d in table[w]:
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
    return len(seen) == len(f.max_cones)


def _basis_of(f: Fan, cone):
    chosen = []
    for i in sorted(cone):
        if rank([f.rays[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
    return chosen


def projectivity_witness(f: Fan):
    """Integer divisor coefficients ``a`` whose polytope has normal fan ``f``.

    Solves for a strictly convex support function, one strict inequality per
    wall, as an exact LP.  Returns None when ``f`` is not projective.
    Assumes ``f`` is complete.
    """
    r, n = f.nrays, f.dim
    if n == 0:
        return ()
    coeffs = {}  # cone -> (basis, {ray j: coefficients of v_j in the basis})

    def expansion(cone, j):
        basis, cache = coeffs[cone]
        if j not in cache:
            # v_j = sum_b c_b v_b
            m = [tuple(f.rays[b][k] for b in basis) for k in range(n)]
            sol = solve_rational(m, f.rays[j], len(basis))
            cache[j] = sol
        return cache[j]

    for c in f.max_cones:
        coeffs[c] = (_basis_of(f, c), {})

    def support_row(cone, j):
        # <u_cone, v_j> = -sum_b c_b a_b ; returns row of that linear form in a
        basis, _ = coeffs[cone]
        row = [Fraction(0)] * r
        for b, cb in zip(basis, expansion(cone, j)):
            row[b] -= cb
        return row

    a_eq, b_eq, a_ub, b_ub = [], [], [], []
    first = f.max_cones[0]
    for b in coeffs[first][0]:
        row = [0] * r
        row[b] = 1
        a_eq.append(row)
        b_eq.append(0)
    for c in f.max_cones:
        basis = coeffs[c][0]
        for j in sorted(c):
            if j in basis:
                continue
            row = support_row(c, j)
            row[j] += 1  # <u, v_j> + a_j = 0
            a_eq.append(row)
            b_eq.append(0)
    table = wall_adjacency(f)
    for c in f.max_cones:
        for w in f.walls(c):
            for d in table[w]:
                if d == c:
                    continue
                for j in sorted(d - w):
                    row = support_row(c, j)
                    row[j] += 1  # <u_c, v_j> + a_j >= 1
                    a_ub.append([-x for x in row])
                    b_ub.append(-1)
    sol = feasible_point(a_ub, b_ub, a_eq, b_eq, nvars=r)
    if sol is None:
        return None
    # scale so that both a and every vertex u_sigma are integral
    verts = []
    for c in f.max_cones:
        basis = coeffs[c][0]
        m = [f.rays[b] for b in basis]
        verts.append(solve_rational(m, [-sol[b] for b in basis], n))
    d = 1
    for x in list(sol) + [x for v in verts for x in v]:
        d = lcm(d, Fraction(x).denominator)
    return tuple(int(x * d) for x in sol)


def witness_polytope(f: Fan) -> Polytope:
    """A lattice polytope whose normal fan is ``f``."""
    a = projectivity_witness(f)
    if a is None:
        raise NotProjective("no strictly convex support function exists")
    verts = []
    for c in f.max_cones:
        basis = _basis_of(f, c)
        verts.append(solve_rational([f.rays[b] for b in basis], [-a[b] for b in basis], f.dim))
    return Polytope.from_points(verts)


def validate(f: Fan) -> FanReport:
    """Check strong convexity, proper intersections, completeness, simpliciality, projectivity."""
    for c in f.max_cones:
        if not _is_pointed(f, c):
            raise MalformedFan(f"cone {sorted(c)} is not strongly convex")
    for c1, c2 in combinations(f.max_cones, 2):
        if not _meet_properly(f, c1, c2):
            raise MalformedFan(f"cones {sorted(c1)} and {sorted(c2)} overlap improperly")
    complete = is_complete(f)
    projective = complete and projectivity_witness(f) is not None
    return FanReport(True, complete, is_simplicial_fan(f), projective)


def require_projective(f: Fan):
    if not is_complete(f) or projectivity_witness(f) is None:
        raise NotProjective("fan is not complete and projective")


def smallest_containing_cone(f: Fan, vectors):
    """Minimal cone of ``f`` containing all ``vectors``, or None."""
    vectors = [tuple(v) for v in vectors]
    best = None
    for c in f.cones:
        data = f.cone_data(c)
        if all(data.contains(v) for v in vectors):
            if best is None or len(c) < len(best):
                best = c
            # cones are sorted by size, so the first hit is minimal
            break
    return best


def is_refinement(fine: Fan, coarse: Fan) -> dict:
    """Map each maximal cone of ``fine`` to the minimal cone of ``coarse`` containing it."""
    if fine.dim != coarse.dim:
        raise NotRefinement(frozenset())
    out = {}
    for c in fine.max_cones:
        target = smallest_containing_cone(coarse, [fine.rays[i] for i in sorted(c)])
        if target is None:
            raise NotRefinement(c)
        out[c] = target
    return out


def simplicialize(f: Fan, check: bool = True):
    """Pulling refinement with the same rays; returns ``(fan, cone_map)``.

    Every non-simplicial cone is pulled at its smallest ray index,
    recursively on the faces missing that ray.  Pulling with one global
    order is compatible on shared faces, so the pieces form a fan.
    """
    if check:
        require_projective(f)
    memo = {}

    def pull(cone):
        if cone in memo:
            return memo[cone]
        data = f.cone_data(cone)
        if len(cone) == data.rank:
            res = [cone]
        else:
            apex = min(cone)
            order = sorted(cone)
            res = []
            for _, idx in data.facets:
                facet = frozenset(order[i] for i in idx)
                if apex in facet:
                    continue
                res.extend(s | {apex} for s in pull(facet))
        memo[cone] = res
        return res

    pieces = []
    cone_map = {}
    for c in f.max_cones:
        for s in pull(c):
            pieces.append(s)
            cone_map[s] = c
    out = Fan(f.dim, f.rays, tuple(sorted(set(pieces), key=sorted)))
    return out, cone_map


def normal_fan_equal(f: Fan, g: Fan) -> bool:
    """Equality of fans up to reordering the rays."""
    if f.dim != g.dim or set(f.rays) != set(g.rays):
        return False
    pos = {r: i for i, r in enumerate(g.rays)}
    mapped = {frozenset(pos[f.rays[i]] for i in c) for c in f.max_cones}
    return mapped == set(g.max_cones)


def det_of_rays(f: Fan, ordered):
    return det([f.rays[i] for i in ordered])
