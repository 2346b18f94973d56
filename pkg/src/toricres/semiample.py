"""Torus-invariant divisors: Cartier data, semiampleness, and the reduced fan Σ_α."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    EmptyPolytope,
    IntegralityFailure,
    InternalInconsistency,
    NoSolution,
    NotCartier,
    NotSemiample,
)
from .fan import Fan
from .lattice import (
    QuotientMap,
    dot,
    integer_kernel,
    primitive,
    quotient_lattice,
    rank,
    solve_linear_exact,
    solve_rational,
    sub,
)
from .polytope import Polytope, normal_fan


@dataclass(frozen=True)
class SupportFunction:
    """Integral linear data u_σ per maximal cone with <u_σ, v_j> = -a_j on σ."""

    a: tuple
    u: dict

    def value(self, cone, v):
        return dot(self.u[cone], v)


def _check_divisor(f: Fan, a):
    a = tuple(int(x) for x in a)
    if len(a) != f.nrays:
        raise ValueError(f"divisor has {len(a)} coefficients for {f.nrays} rays")
    return a


def cartier_data(f: Fan, a) -> SupportFunction:
    a = _check_divisor(f, a)
    u = {}
    for cone in f.max_cones:
        idx = sorted(cone)
        try:
            u[cone] = solve_linear_exact([f.rays[j] for j in idx], [-a[j] for j in idx], f.dim)
        except (NoSolution, IntegralityFailure):
            raise NotCartier(cone) from None
    return SupportFunction(a, u)


def is_semiample(f: Fan, a) -> bool:
    """Convexity of φ_D: <u_σ, v_j> >= -a_j for every maximal cone and ray."""
    sf = cartier_data(f, a)
    return all(
        dot(u, v) >= -aj
        for u in sf.u.values()
        for v, aj in zip(f.rays, sf.a)
    )


def is_ample(f: Fan, a) -> bool:
    """Strict convexity: the inequality is strict off each cone."""
    sf = cartier_data(f, a)
    for cone, u in sf.u.items():
        for j, (v, aj) in enumerate(zip(f.rays, sf.a)):
            val = dot(u, v) + aj
            if val < 0 or (val == 0 and j not in cone):
                return False
    return True


def divisor_polytope(f: Fan, a) -> Polytope:
    """P_D = {u : <u, v_j> >= -a_j}, by enumerating basic feasible points."""
    a = _check_divisor(f, a)
    n = f.dim
    if n == 0:
        return Polytope(((),))
    verts = set()
    for combo in combinations(range(f.nrays), n):
        m = [f.rays[j] for j in combo]
        if rank(m) < n:
            continue
        u = solve_rational(m, [-a[j] for j in combo], n)
        if all(dot(u, v) >= -aj for v, aj in zip(f.rays, a)):
            verts.add(u)
    if not verts:
        raise EmptyPolytope("the divisor polytope is empty")
    return Polytope(tuple(sorted(verts)))


@dataclass(frozen=True)
class SemiampleReduction:
    """Σ_α in the lattice N/(N ∩ L) together with the fan map π̃: Σ -> Σ_α.

    ``pi_tilde`` covers every cone of Σ (all faces, not just maximal ones).
    ``reduced_polytope`` is P_D written in a lattice basis of its own span;
    its normal fan is Σ_α.
    """

    a: tuple
    sigma_alpha: Fan
    q: QuotientMap
    pi_tilde: dict
    polytope: Polytope
    reduced_polytope: Polytope
    ray_images: tuple
    vertex_of_cone: dict

    def image_in(self, cone, j) -> bool:
        """Does the image of ray j lie in the cone of Σ_α?"""
        return self.sigma_alpha.cone_data(cone).contains(self.ray_images[j])

    def images_in(self, cone, rays) -> bool:
        data = self.sigma_alpha.cone_data(cone)
        return all(data.contains(self.ray_images[j]) for j in rays)

    def as_dict(self, f: Fan):
        sa = self.sigma_alpha
        return {
            "quotient_matrix": [list(r) for r in self.q.matrix],
            "target_dim": self.q.target_dim,
            "sigma_alpha": {
                "dim": sa.dim,
                "rays": [list(r) for r in sa.rays],
                "max_cones": [sorted(c) for c in sa.max_cones],
            },
            "ray_images": [list(v) for v in self.ray_images],
            "pi_tilde": [
                {"cone": sorted(c), "image": sorted(self.pi_tilde[c])} for c in f.cones
            ],
            "polytope_vertices": [[str(x) for x in v] for v in self.polytope.vertices],
        }


def _reorder_rays(nf: Fan, images) -> Fan:
    """Order Σ_α rays following the first ray of Σ mapping onto each."""
    order = []
    for img in images:
        if any(img):
            r = primitive(img)
            if r in nf.rays and r not in order:
                order.append(r)
    order += [r for r in nf.rays if r not in order]
    pos = {nf.rays[i]: i for i in range(nf.nrays)}
    new_index = {pos[r]: k for k, r in enumerate(order)}
    cones = sorted((frozenset(new_index[i] for i in c) for c in nf.max_cones), key=sorted)
    return Fan(nf.dim, tuple(order), tuple(cones))


def semiample_fan(f: Fan, a) -> SemiampleReduction:
    a = _check_divisor(f, a)
    sf = cartier_data(f, a)
    if not is_semiample(f, a):
        raise NotSemiample("φ_D is not convex")
    n = f.dim
    pd = divisor_polytope(f, a)
    u0 = pd.vertices[0]
    diffs = [sub(v, u0) for v in pd.vertices[1:]]
    l_basis = integer_kernel(diffs, n)
    q = quotient_lattice(l_basis, n)
    k = q.target_dim
    basis_t = [tuple(q.matrix[i][c] for i in range(k)) for c in range(n)]
    coords = [solve_linear_exact(basis_t, [int(x) for x in sub(v, u0)], k) if k else () for v in pd.vertices]
    reduced = Polytope(tuple(coords))
    images = tuple(q(v) for v in f.rays)
    if k == 0:
        sigma = Fan(0, (), (frozenset(),))
    else:
        sigma = _reorder_rays(normal_fan(reduced), images)
    pi = {}
    for cone in f.cones:
        target = _smallest_cone(sigma, [images[j] for j in cone])
        if target is None:
            raise InternalInconsistency(f"image of cone {sorted(cone)} lies in no cone of Σ_α")
        pi[cone] = target
    vertex_of = {}
    for cone in f.max_cones:
        vertex_of[cone] = sf.u[cone]
    return SemiampleReduction(a, sigma, q, pi, pd, reduced, images, vertex_of)


def _smallest_cone(sigma: Fan, vectors):
    from .fan import smallest_containing_cone

    return smallest_containing_cone(sigma, vectors)


def normal_cone_of_vertex(red: SemiampleReduction, u) -> frozenset:
    """The maximal cone σ_u of Σ_α attached to a vertex u of P_D."""
    sigma = red.sigma_alpha
    if sigma.dim == 0:
        return frozenset()
    k = red.q.target_dim
    u0 = red.polytope.vertices[0]
    basis_t = [tuple(red.q.matrix[i][c] for i in range(k)) for c in range(len(u0))]
    c = solve_linear_exact(basis_t, [int(x) for x in sub(u, u0)], k)
    on = frozenset(
        j for j, r in enumerate(sigma.rays)
        if dot(r, c) == min(dot(r, w) for w in red.reduced_polytope.vertices)
    )
    return on


def irrelevant_ideal_generators(f: Fan) -> list:
    """Supports of the generators ∏_{ρ_j ∉ σ} x_j of the irrelevant ideal B."""
    gens = {frozenset(range(f.nrays)) - c for c in f.max_cones}
    return sorted(gens, key=lambda s: (len(s), sorted(s)))


def b_alpha_generators(red: SemiampleReduction, f: Fan) -> list:
    """Supports of ∏_{π̃(ρ_j) ∉ σ} x_j over maximal σ of Σ_α (empty set = the unit monomial)."""
    gens = set()
    for cone in red.sigma_alpha.max_cones:
        gens.add(frozenset(j for j in range(f.nrays) if not red.image_in(cone, j)))
    return sorted(gens, key=lambda s: (len(s), sorted(s)))


def primitive_collections(red: SemiampleReduction, f: Fan) -> list:
    """Minimal ray sets whose images lie in no cone of Σ_α."""
    cones = red.sigma_alpha.max_cones

    def in_some_cone(rays):
        return any(red.images_in(c, rays) for c in cones)

    found = []
    for size in range(1, f.nrays + 1):
        for combo in combinations(range(f.nrays), size):
            s = frozenset(combo)
            if any(p <= s for p in found):
                continue
            if in_some_cone(s):
                continue
            if all(in_some_cone(s - {j}) for j in s):
                found.append(s)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def class_eq(f: Fan, a1, a2) -> bool:
    """Linear equivalence: a1 - a2 = (<u, v_j>)_j for some u in M."""
    diff = [x - y for x, y in zip(_check_divisor(f, a1), _check_divisor(f, a2))]
    if f.dim == 0:
        return not any(diff)
    try:
        solve_linear_exact(list(f.rays), diff, f.dim)
    except (NoSolution, IntegralityFailure):
        return False
    return True


class DegreeClass:
    """Divisor class [Σ a_j D_j] modulo linear equivalence."""

    __hash__ = None

    def __init__(self, fan: Fan, a):
        self.fan = fan
        self.a = _check_divisor(fan, a)

    def __eq__(self, other):
        if not isinstance(other, DegreeClass):
            return NotImplemented
        return self.fan == other.fan and class_eq(self.fan, self.a, other.a)

    def __add__(self, other):
        return DegreeClass(self.fan, [x + y for x, y in zip(self.a, other.a)])

    def __sub__(self, other):
        return DegreeClass(self.fan, [x - y for x, y in zip(self.a, other.a)])

    def __repr__(self):
        return f"DegreeClass({list(self.a)})"
