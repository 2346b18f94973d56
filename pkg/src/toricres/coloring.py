"""Simplicial colorings and their combinatorial degree.

The degree is computed three ways that share no counting code:

* :func:`cdeg_flags` counts signed complete flags of a polytope mapped onto
  a fixed flag of the simplex boundary;
* :func:`cdeg_cones` counts signed maximal cones of a simplicial fan that
  carry all colors but one;
* :func:`pl_degree_oracle` builds the piecewise-linear characteristic map on
  the barycentric subdivision and counts signed preimages of a random point.

Sign convention: the target simplex is oriented by the chart
``(y_1, ..., y_n)``, which gives the identity-type coloring of the standard
simplex (facet ``x_i = 0`` colored ``i``, facet ``x_1 + ... + x_n = 1``
colored 0) degree +1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .errors import (
    DegenerateSampling,
    EmptyColorSet,
    NotDisjoint,
    NotSimplicialColoring,
    NotSimplicialFan,
    OriginNotInterior,
)
from .fan import Fan, is_simplicial_fan, require_projective, simplicialize, witness_polytope
from .lattice import det_sign, solve_rational, sub
from .polytope import (
    Polytope,
    barycenter,
    dual_face,
    enumerate_flags,
    face_lattice,
    flag_sign,
    polar,
)


@dataclass(frozen=True)
class Coloring:
    """Color sets per ray, parallel to ``Fan.rays``."""

    colors: tuple

    @classmethod
    def of(cls, colors) -> "Coloring":
        out = []
        for c in colors:
            s = frozenset([c]) if isinstance(c, int) else frozenset(c)
            if not s:
                raise ValueError("every ray needs at least one color")
            out.append(s)
        return cls(tuple(out))

    @property
    def is_disjoint(self) -> bool:
        return all(len(s) == 1 for s in self.colors)

    def check(self, n: int, nrays: int | None = None):
        if nrays is not None and len(self.colors) != nrays:
            raise ValueError(f"coloring has {len(self.colors)} entries for {nrays} rays")
        for s in self.colors:
            if not s or any(not 0 <= i <= n for i in s):
                raise ValueError(f"color set {sorted(s)} outside 0..{n}")

    def relabel(self, perm) -> "Coloring":
        """Apply a permutation of colors given as a mapping old -> new."""
        return Coloring(tuple(frozenset(perm[i] for i in s) for s in self.colors))

    def as_lists(self):
        return [sorted(s) for s in self.colors]


@dataclass(frozen=True)
class ViolatingCone:
    """A maximal cone seeing every color, with one witness ray per color."""

    cone: frozenset
    witness: tuple  # witness[i] = ray carrying color i

    def __str__(self):
        rays = [j + 1 for j in sorted(self.cone)]
        per_color = [j + 1 for j in self.witness]
        return f"cone of rays {rays} sees every color (rays {per_color} carry colors 0..{len(per_color) - 1})"


def violating_cone(f: Fan, c: Coloring):
    """The first maximal cone containing rays of all n+1 colors, or None."""
    n = f.dim
    for cone in f.max_cones:
        witness = []
        for i in range(n + 1):
            j = next((j for j in sorted(cone) if i in c.colors[j]), None)
            if j is None:
                break
            witness.append(j)
        else:
            return ViolatingCone(cone, tuple(witness))
    return None


def is_simplicial(f: Fan, c: Coloring) -> bool:
    return violating_cone(f, c) is None


def psi_of_face(f: Fan, c: Coloring, cone) -> frozenset:
    """Index set I of the simplex face Δ_I receiving the polytope face dual to ``cone``.

    A face lies in the color class C_i exactly when one of the facets
    through it, i.e. one ray of its normal cone, carries color i.
    """
    cone = frozenset(cone)
    if not cone:
        raise EmptyColorSet("the zero cone corresponds to the whole polytope")
    colors = frozenset().union(*(c.colors[j] for j in cone))
    if len(colors) == f.dim + 1:
        raise NotSimplicialColoring(f"cone {sorted(cone)} carries every color")
    return colors


def reduce_to_disjoint(c: Coloring) -> Coloring:
    """Keep the smallest color of every ray."""
    return Coloring(tuple(frozenset([min(s)]) for s in c.colors))


# -- target simplex ---------------------------------------------------------

def simplex_face_barycenter(index_set, n):
    """Barycenter of Δ_I in the chart (y_1, ..., y_n)."""
    live = [i for i in range(n + 1) if i not in index_set]
    k = len(live)
    return tuple(Fraction(int(i in live), k) for i in range(1, n + 1))


def canonical_target_flag(n):
    """Δ_{1..n} ⊂ Δ_{2..n} ⊂ ... ⊂ Δ_n, as index sets."""
    return tuple(frozenset(range(d + 1, n + 1)) for d in range(n))


def all_target_flags(n):
    """Every complete flag of the simplex boundary, as chains of index sets."""
    out = []
    for perm in permutations(range(n + 1)):
        # drop colors one at a time; the vertex keeps only perm[0]
        out.append(tuple(frozenset(perm[d + 1:]) for d in range(n)))
    return out


def simplex_flag_sign(flag, n) -> int:
    y0 = simplex_face_barycenter(flag[0], n)
    frame = [sub(simplex_face_barycenter(s, n), y0) for s in flag[1:]]
    frame.append(sub(simplex_face_barycenter(frozenset(), n), y0))
    return det_sign(frame)


# -- route 1: flags ---------------------------------------------------------

def _face_colors(p: Polytope, facet_colors):
    facets = p.facets

    def colors_of(face):
        out = set()
        for f, cs in zip(facets, facet_colors):
            if face <= f.vertices:
                out |= cs
        return frozenset(out)

    return colors_of


def check_facet_coloring(p: Polytope, facet_colors):
    """Raise unless the facet coloring covers ∂P and no face sees all colors."""
    n = p.ambient_dim
    if len(facet_colors) != len(p.facets):
        raise ValueError("one color set per facet required")
    colors_of = _face_colors(p, facet_colors)
    lat = face_lattice(p)
    for v in lat.faces[0]:
        if len(colors_of(v)) == n + 1:
            raise NotSimplicialColoring(f"vertex {sorted(v)} lies in every color class")


def cdeg_flags(p: Polytope, facet_colors, target_flag=None) -> int:
    """Signed count of complete flags of ∂P mapped onto a fixed flag of ∂Δ."""
    n = p.ambient_dim
    facet_colors = [frozenset(s) for s in facet_colors]
    check_facet_coloring(p, facet_colors)
    if target_flag is None:
        target_flag = canonical_target_flag(n)
    target_flag = tuple(frozenset(s) for s in target_flag)
    colors_of = _face_colors(p, facet_colors)
    total = 0
    for flag in enumerate_flags(face_lattice(p)):
        if all(colors_of(x) == y for x, y in zip(flag, target_flag)):
            total += flag_sign(p, flag)
    return simplex_flag_sign(target_flag, n) * total


# -- route 2: colored cones -------------------------------------------------

def cdeg_cones(f: Fan, c: Coloring, k: int) -> int:
    """(-1)^k times the oriented count of maximal cones colored by all colors except k."""
    n = f.dim
    if not c.is_disjoint:
        raise NotDisjoint("cone counting needs a disjoint coloring")
    if not is_simplicial_fan(f):
        raise NotSimplicialFan("cone counting needs a simplicial fan")
    bad = violating_cone(f, c)
    if bad is not None:
        raise NotSimplicialColoring(bad)
    want = set(range(n + 1)) - {k}
    color = [next(iter(s)) for s in c.colors]
    total = 0
    for cone in f.max_cones:
        if {color[j] for j in cone} == want and len(cone) == n:
            ordered = sorted(cone, key=lambda j: color[j])
            total += det_sign([f.rays[j] for j in ordered])
    return (-1) ** k * total


@lru_cache(maxsize=512)
def _projective(f: Fan) -> bool:
    require_projective(f)
    return True


def cdeg(f: Fan, c: Coloring) -> int:
    """Combinatorial degree of a simplicial coloring of a projective fan."""
    c.check(f.dim, f.nrays)
    _projective(f)
    bad = violating_cone(f, c)
    if bad is not None:
        raise NotSimplicialColoring(bad)
    d = reduce_to_disjoint(c)
    g = f if is_simplicial_fan(f) else simplicialize(f, check=False)[0]
    return cdeg_cones(g, d, 0)


def fan_coloring_on_polytope(p: Polytope, f: Fan, c: Coloring):
    """Transfer a ray coloring to the facets of a polytope with normal fan ``f``."""
    index = {r: j for j, r in enumerate(f.rays)}
    return [c.colors[index[fc.normal]] for fc in p.facets]


def cdeg_flags_fan(f: Fan, c: Coloring, polytope: Polytope | None = None) -> int:
    p = polytope if polytope is not None else witness_polytope(f)
    return cdeg_flags(p, fan_coloring_on_polytope(p, f, c))


# -- route 3: piecewise-linear map ------------------------------------------

def _random_point_in_facet(rng, n, facet=0):
    w = [rng.randint(1, 10**9) for _ in range(n)]
    total = sum(w)
    coords = [Fraction(x, total) for x in w]
    y = coords[:facet] + [Fraction(0)] + coords[facet:]
    return tuple(y[1:])  # chart coordinates


def _simplex_orientation(points, inside) -> int:
    p0 = points[0]
    frame = [sub(q, p0) for q in points[1:]]
    frame.append(sub(inside, p0))
    return det_sign(frame)


def _locate(point, simplex):
    """Barycentric coordinates of ``point`` on the affine simplex, or None if off its hull."""
    m = len(point)
    k = len(simplex)
    rows = [[simplex[j][i] for j in range(k)] for i in range(m)]
    rows.append([1] * k)
    sol = solve_rational(rows, list(point) + [1], k)
    return sol


def pl_degree_oracle(p: Polytope, facet_colors, seed: int = 0, max_tries: int = 64) -> int:
    """Topological degree of the barycentric characteristic map ∂P -> ∂Δ."""
    n = p.ambient_dim
    facet_colors = [frozenset(s) for s in facet_colors]
    check_facet_coloring(p, facet_colors)
    colors_of = _face_colors(p, facet_colors)
    flags = enumerate_flags(face_lattice(p))
    center_p = barycenter(p.vertices)
    center_d = simplex_face_barycenter(frozenset(), n)
    pieces = []
    for flag in flags:
        dom = [barycenter([p.vertices[i] for i in g]) for g in flag]
        img = [simplex_face_barycenter(colors_of(g), n) for g in flag]
        orient_dom = _simplex_orientation(dom, center_p) * p.orientation_sign()
        orient_img = _simplex_orientation(img, center_d)
        pieces.append((img, orient_dom * orient_img))
    rng = random.Random(seed)
    for _ in range(max_tries):
        y = _random_point_in_facet(rng, n)
        degree = 0
        degenerate = False
        for img, sign in pieces:
            lam = _locate(y, img)
            if lam is None:
                continue
            if sign == 0:
                degenerate = True  # y meets a collapsed piece
                break
            if all(x > 0 for x in lam):
                degree += sign
            elif all(x >= 0 for x in lam):
                degenerate = True
                break
        if not degenerate:
            return degree
    raise DegenerateSampling(f"no generic point found in {max_tries} tries")


# -- dual map ---------------------------------------------------------------

def standard_simplex(n) -> Polytope:
    """conv(0, e_1, ..., e_n), identified with Δ through the chart (y_1..y_n)."""
    verts = [tuple(0 for _ in range(n))] + [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return Polytope.from_points(verts)


def identity_coloring_of_simplex(p: Polytope):
    """Facet x_i = 0 gets color i, the far facet gets color 0."""
    out = []
    for f in p.facets:
        if sum(1 for x in f.normal if x) == 1 and max(f.normal) == 1:
            out.append(frozenset([f.normal.index(1) + 1]))
        else:
            out.append(frozenset([0]))
    return out


def dual_map_degree(p: Polytope, facet_colors, target_flag=None) -> int:
    """Degree of ψ*: faces of ∂P° -> faces of ∂Δ°, by flag counting on the polars."""
    n = p.ambient_dim
    if not p.interior_contains_origin():
        raise OriginNotInterior("dual degree needs the origin inside P")
    facet_colors = [frozenset(s) for s in facet_colors]
    check_facet_coloring(p, facet_colors)
    pd = polar(p)
    simplex = standard_simplex(n)
    q = simplex.translate(tuple(-x for x in barycenter(simplex.vertices)))
    qd = polar(q)
    color_of_qfacet = [next(iter(s)) for s in identity_coloring_of_simplex(q)]
    qvertex_of_color = {col: j for j, col in enumerate(color_of_qfacet)}

    def dual_of_simplex_face(index_set):
        return frozenset(qvertex_of_color[i] for i in index_set)

    facets = p.facets

    def psi_star(h):
        # h: face of P° as a set of P-facet indices; its dual face G of P is cut out by them
        g = frozenset.intersection(*(facets[j].vertices for j in h))
        colors = set()
        for f, cs in zip(facets, facet_colors):
            if g <= f.vertices:
                colors |= cs
        return dual_of_simplex_face(colors)

    if target_flag is None:
        target_flag = canonical_target_flag(n)
    target_star = tuple(dual_of_simplex_face(target_flag[n - 1 - d]) for d in range(n))
    total = 0
    for flag in enumerate_flags(face_lattice(pd)):
        if all(psi_star(x) == y for x, y in zip(flag, target_star)):
            total += flag_sign(pd, flag)
    return flag_sign(qd, target_star) * total


def flag_sign_duality_factors(p: Polytope) -> set:
    """The set of ratios sgn(X) / sgn(X*) over all complete flags X of ∂P."""
    n = p.ambient_dim
    pd = polar(p)
    out = set()
    for flag in enumerate_flags(face_lattice(p)):
        star = tuple(dual_face(p, flag[n - 1 - d]) for d in range(n))
        out.add(flag_sign(p, flag) * flag_sign(pd, star))
    return out
