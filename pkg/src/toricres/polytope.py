"""Rational polytopes, face lattices, complete flags and polar duality.

Convex hulls are computed by brute force over candidate supporting
hyperplanes of the homogenized point cone.  Instances are desk-sized
(a few dozen points in dimension <= 4), so this is plenty.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, cmp_to_key
from itertools import combinations, product
from math import ceil, floor

from .errors import DegeneratePolytope, OriginNotInterior
from .lattice import (
    clear_denominators,
    det,
    det_sign,
    dot,
    primitive,
    rank,
    rational_kernel,
    row_reduce,
    sub,
)


def _normal_of(vectors, d):
    """Integer normal to d-1 integer vectors in Z^d, or None if they are dependent."""
    normal = []
    for k in range(d):
        minor = [tuple(v[j] for j in range(d) if j != k) for v in vectors]
        normal.append((-1) ** k * det(minor))
    if not any(normal):
        return None
    return primitive(normal)


def cone_facets(vectors):
    """Facets of the full-dimensional pointed cone spanned by integer ``vectors``.

    Returns a list of ``(normal, indices)``: ``normal`` is a primitive inner
    normal and ``indices`` the generators lying on the facet.
    """
    vectors = [tuple(v) for v in vectors]
    d = len(vectors[0])
    if d == 1:
        facets = []
        for s in (1, -1):
            on = frozenset(i for i, v in enumerate(vectors) if v[0] == 0)
            if all(s * v[0] >= 0 for v in vectors) and any(v[0] for v in vectors):
                facets.append(((s,), on))
        return facets
    found = {}
    for combo in combinations(range(len(vectors)), d - 1):
        if any(set(combo) <= key for key in found):
            continue
        normal = _normal_of([vectors[i] for i in combo], d)
        if normal is None:
            continue
        values = [dot(normal, v) for v in vectors]
        if all(x >= 0 for x in values):
            pass
        elif all(x <= 0 for x in values):
            normal = tuple(-x for x in normal)
        else:
            continue
        key = frozenset(i for i, x in enumerate(values) if x == 0)
        found.setdefault(key, normal)
    return [(n, k) for k, n in found.items()]


def _angle_key(v):
    # counterclockwise order starting at the positive x-axis
    half = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    return half


def _angle_cmp(u, v):
    hu, hv = _angle_key(u), _angle_key(v)
    if hu != hv:
        return hu - hv
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def sort_directions(vectors):
    """Deterministic order for ray generators: by angle in the plane, else lex descending."""
    if vectors and len(vectors[0]) == 2:
        return sorted(vectors, key=cmp_to_key(_angle_cmp))
    return sorted(vectors, reverse=True)


def barycenter(points):
    k = len(points)
    return tuple(Fraction(sum(c), k) for c in zip(*points))


@dataclass(frozen=True)
class Facet:
    """Supporting inequality ``<normal, x> >= offset`` and the vertices it cuts out."""

    normal: tuple
    offset: Fraction
    vertices: frozenset


@dataclass(frozen=True)
class FaceLattice:
    """Faces of a polytope (vertex-index sets) graded by dimension.

    ``faces[d]`` lists the d-dimensional faces in a fixed lexicographic
    order; the polytope itself sits at ``faces[dim]``.
    """

    faces: dict
    dim: int

    def all_faces(self):
        for d in sorted(self.faces):
            yield from self.faces[d]

    def dim_of(self, face) -> int:
        return self._dims[face]

    @cached_property
    def _dims(self):
        return {f: d for d, fs in self.faces.items() for f in fs}

    def f_vector(self):
        return tuple(len(self.faces[d]) for d in range(self.dim))

    @cached_property
    def order(self):
        """Cover relations as index pairs (lower face, upper face)."""
        pairs = []
        for d in range(self.dim):
            for lower in self.faces[d]:
                for upper in self.faces[d + 1]:
                    if lower < upper:
                        pairs.append((lower, upper))
        return pairs


@dataclass(frozen=True)
class Polytope:
    """Convex hull of rational points; ``vertices`` are exactly its extreme points.

    ``orientation`` is an ordered basis of the ambient space (rows); the
    standard basis when omitted.
    """

    vertices: tuple
    orientation: tuple | None = field(default=None, compare=False)

    @classmethod
    def from_points(cls, points, orientation=None) -> "Polytope":
        pts = []
        seen = set()
        for p in points:
            q = tuple(Fraction(x) for x in p)
            if q not in seen:
                seen.add(q)
                pts.append(q)
        if not pts:
            raise DegeneratePolytope("no points")
        probe = cls(tuple(pts), orientation)
        keep = probe._extreme_indices()
        return cls(tuple(pts[i] for i in keep), orientation)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @cached_property
    def dim(self) -> int:
        v0 = self.vertices[0]
        return rank([sub(v, v0) for v in self.vertices[1:]]) if len(self.vertices) > 1 else 0

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def is_lattice(self) -> bool:
        return all(Fraction(x).denominator == 1 for v in self.vertices for x in v)

    def orientation_sign(self) -> int:
        if self.orientation is None:
            return 1
        s = det_sign(self.orientation)
        if s == 0:
            raise ValueError("orientation basis is singular")
        return s

    def translate(self, t) -> "Polytope":
        return Polytope(tuple(tuple(a + b for a, b in zip(v, t)) for v in self.vertices), self.orientation)

    def scaled(self, c) -> "Polytope":
        return Polytope(tuple(tuple(c * a for a in v) for v in self.vertices), self.orientation)

    # -- affine span ------------------------------------------------------

    @cached_property
    def _chart(self):
        """Coordinates (column indices) that are injective on the affine span."""
        v0 = self.vertices[0]
        diffs = [sub(v, v0) for v in self.vertices[1:]]
        if not diffs:
            return []
        _, pivots = row_reduce(diffs)
        return pivots

    @cached_property
    def equations(self):
        """Pairs ``(w, c)`` with ``<w, x> = c`` cutting out the affine span."""
        v0 = self.vertices[0]
        diffs = [sub(v, v0) for v in self.vertices[1:]]
        eqs = []
        for w in rational_kernel(diffs, self.ambient_dim):
            w = primitive(w)
            eqs.append((w, dot(w, v0)))
        return eqs

    def _projected(self):
        chart = self._chart
        return [tuple(v[c] for c in chart) for v in self.vertices]

    def _extreme_indices(self):
        if self.dim == 0:
            return [0]
        proj = self._projected()
        homog = [clear_denominators((Fraction(1),) + p) for p in proj]
        facets = cone_facets(homog)
        k = self.dim
        keep = []
        for i in range(len(homog)):
            normals = [n for n, idx in facets if i in idx]
            if normals and rank(normals) == k:
                keep.append(i)
        return keep

    @cached_property
    def facets(self) -> tuple:
        """Facets relative to the affine span, as :class:`Facet` records.

        Normals are expressed in the ambient space (zero outside the chart
        coordinates), primitive, pointing inward.
        """
        k = self.dim
        if k == 0:
            return ()
        chart = self._chart
        proj = self._projected()
        homog = [clear_denominators((Fraction(1),) + p) for p in proj]
        out = []
        for normal, idx in cone_facets(homog):
            lin = normal[1:]
            if not any(lin):
                continue  # homogenizing face at infinity does not occur for bounded sets
            amb = [0] * self.ambient_dim
            for c, x in zip(chart, lin):
                amb[c] = x
            amb = primitive(amb)
            offset = min(dot(amb, v) for v in self.vertices)
            verts = frozenset(i for i, v in enumerate(self.vertices) if dot(amb, v) == offset)
            out.append(Facet(amb, offset, verts))
        if self.dim == self.ambient_dim:
            order = sort_directions([f.normal for f in out])
            rank_of = {n: i for i, n in enumerate(order)}
            out.sort(key=lambda f: rank_of[f.normal])
        else:
            out.sort(key=lambda f: sorted(f.vertices))
        return tuple(out)

    def contains(self, x) -> bool:
        if any(dot(w, x) != c for w, c in self.equations):
            return False
        if self.dim == 0:
            return tuple(Fraction(a) for a in x) == self.vertices[0]
        return all(dot(f.normal, x) >= f.offset for f in self.facets)

    def interior_contains_origin(self) -> bool:
        if not self.is_full_dimensional:
            return False
        return all(f.offset < 0 for f in self.facets)


def face_lattice(p: Polytope) -> FaceLattice:
    """All faces of ``p`` (including ``p`` itself), graded by dimension."""
    full = frozenset(range(len(p.vertices)))
    facet_sets = [f.vertices for f in p.facets]
    faces = {full}
    frontier = set(facet_sets)
    while frontier:
        faces |= frontier
        nxt = set()
        for g in frontier:
            for f in facet_sets:
                h = g & f
                if h and h not in faces:
                    nxt.add(h)
        frontier = nxt
    graded = {}
    for g in faces:
        pts = [p.vertices[i] for i in sorted(g)]
        d = rank([sub(v, pts[0]) for v in pts[1:]]) if len(pts) > 1 else 0
        graded.setdefault(d, []).append(g)
    for d in graded:
        graded[d].sort(key=lambda s: sorted(s))
    for d in range(p.dim + 1):
        graded.setdefault(d, [])
    return FaceLattice(graded, p.dim)


def enumerate_flags(lat: FaceLattice) -> list:
    """All complete flags X_0 ⊂ ... ⊂ X_{n-1} of proper faces, lexicographically."""
    n = lat.dim
    flags = []

    def extend(chain):
        d = len(chain)
        if d == n:
            flags.append(tuple(chain))
            return
        for g in lat.faces[d]:
            if not chain or chain[-1] < g:
                chain.append(g)
                extend(chain)
                chain.pop()

    extend([])
    return flags


def flag_sign(p: Polytope, flag) -> int:
    """Orientation sign of the frame pointing from X_0 into X_1, ..., X_{n-1}, P."""
    if not p.is_full_dimensional:
        raise DegeneratePolytope("flag signs need a full-dimensional polytope")
    v0 = barycenter([p.vertices[i] for i in flag[0]])
    frame = [sub(barycenter([p.vertices[i] for i in g]), v0) for g in flag[1:]]
    frame.append(sub(barycenter(p.vertices), v0))
    s = det_sign(frame)
    if s == 0:
        raise DegeneratePolytope("flag frame is degenerate")
    return s * p.orientation_sign()


def polar(p: Polytope) -> Polytope:
    """Polar polytope {v : <u, v> >= -1 for u in p}.

    Vertex ``i`` of the result is dual to facet ``i`` of ``p``, so
    :func:`dual_face` gives the order-reversing face correspondence.
    """
    if not p.interior_contains_origin():
        raise OriginNotInterior("origin must lie in the interior")
    verts = tuple(tuple(Fraction(x) / -f.offset for x in f.normal) for f in p.facets)
    return Polytope(verts, p.orientation)


def dual_face(p: Polytope, face) -> frozenset:
    """Face G* of the polar (as polar-vertex indices) dual to the face G of ``p``."""
    return frozenset(i for i, f in enumerate(p.facets) if face <= f.vertices)


def lattice_points(p: Polytope) -> list:
    """All integer points of ``p`` by bounding-box scan, in lexicographic order."""
    lo = [floor(min(v[c] for v in p.vertices)) for c in range(p.ambient_dim)]
    hi = [ceil(max(v[c] for v in p.vertices)) for c in range(p.ambient_dim)]
    return [x for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))) if p.contains(x)]


def normal_fan(p: Polytope):
    """Inner normal fan: one ray per facet, one maximal cone per vertex."""
    from .fan import Fan

    if not p.is_full_dimensional:
        raise DegeneratePolytope("normal fan needs a full-dimensional polytope")
    facets = p.facets
    rays = tuple(f.normal for f in facets)
    cones = [frozenset(j for j, f in enumerate(facets) if i in f.vertices) for i in range(len(p.vertices))]
    return Fan(p.ambient_dim, rays, tuple(sorted(set(cones), key=sorted)))
