"""Toric residues of monomial tuples, monomial ideal membership, residue-one colorings."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .coloring import Coloring, cdeg, cdeg_cones, reduce_to_disjoint, violating_cone
from .errors import (
    CommonZero,
    InternalInconsistency,
    NotDecomposable,
    NotDivisible,
    NotSemiample,
    UncoloredRay,
)
from .fan import Fan, is_simplicial_fan, simplicialize
from .lattice import dot
from .polytope import lattice_points
from .semiample import (
    DegreeClass,
    SemiampleReduction,
    b_alpha_generators,
    is_semiample,
    semiample_fan,
)


@dataclass(frozen=True, order=True)
class Monomial:
    """x^a = ∏ x_j^{a_j} in the Cox ring; ``exponents`` parallel to the rays."""

    exponents: tuple

    @classmethod
    def of(cls, exponents) -> "Monomial":
        exps = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        return cls(exps)

    @classmethod
    def squarefree(cls, support, nvars) -> "Monomial":
        return cls(tuple(int(j in support) for j in range(nvars)))

    @classmethod
    def one(cls, nvars) -> "Monomial":
        return cls((0,) * nvars)

    @property
    def support(self) -> frozenset:
        return frozenset(j for j, e in enumerate(self.exponents) if e)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __str__(self):
        parts = []
        for j, e in enumerate(self.exponents):
            if e == 1:
                parts.append(f"x{j + 1}")
            elif e:
                parts.append(f"x{j + 1}^{e}")
        return "*".join(parts) or "1"


def _as_monomials(z, nvars=None):
    out = [m if isinstance(m, Monomial) else Monomial.of(m) for m in z]
    if nvars is not None and any(len(m.exponents) != nvars for m in out):
        raise ValueError(f"monomials must have {nvars} exponents")
    return out


def coloring_of_tuple(f: Fan, z) -> Coloring:
    """Ray j gets color i exactly when x_j divides z_i."""
    z = _as_monomials(z, f.nrays)
    if len(z) != f.dim + 1:
        raise ValueError(f"need {f.dim + 1} monomials, got {len(z)}")
    colors = []
    for j in range(f.nrays):
        s = frozenset(i for i, m in enumerate(z) if m.exponents[j] >= 1)
        if not s:
            raise UncoloredRay(j)
        colors.append(s)
    return Coloring(tuple(colors))


def residue_monomials(f: Fan, z) -> int:
    """Res_z(z_0...z_n / x_1...x_r) for monomials whose product is divisible by x_1...x_r."""
    z = _as_monomials(z, f.nrays)
    prod = Monomial.one(f.nrays)
    for m in z:
        prod = prod * m
    if not all(e >= 1 for e in prod.exponents):
        missing = next(j for j, e in enumerate(prod.exponents) if e == 0)
        raise NotDivisible(f"x_{missing + 1} does not divide z_0...z_n")
    c = coloring_of_tuple(f, z)
    bad = violating_cone(f, c)
    if bad is not None:
        raise CommonZero(bad)
    return cdeg(f, c)


def degree_of(f: Fan, m) -> DegreeClass:
    m = m if isinstance(m, Monomial) else Monomial.of(m)
    return DegreeClass(f, m.exponents)


def critical_degree(f: Fan, z) -> DegreeClass:
    """Σ deg z_i - Σ deg x_j."""
    z = _as_monomials(z, f.nrays)
    total = [sum(m.exponents[j] for m in z) - 1 for j in range(f.nrays)]
    return DegreeClass(f, total)


@dataclass(frozen=True)
class SectionSupport:
    """Lattice points u of P_D and their homogenizations χ^u = ∏ x_j^{<u,v_j> + a_j}."""

    a: tuple
    points: tuple
    monomials: tuple


def sections_basis(f: Fan, a) -> SectionSupport:
    from .semiample import cartier_data, divisor_polytope

    cartier_data(f, a)
    a = tuple(int(x) for x in a)
    pts = lattice_points(divisor_polytope(f, a))
    mons = []
    for u in pts:
        exps = tuple(dot(u, v) + aj for v, aj in zip(f.rays, a))
        if any(e < 0 for e in exps):
            raise InternalInconsistency(f"negative exponent at lattice point {u}")
        mons.append(Monomial(exps))
    return SectionSupport(a, tuple(pts), tuple(mons))


def minimal_generators(gens) -> list:
    """Squarefree, inclusion-minimal generating set of a radical monomial ideal."""
    sq = {g.support if isinstance(g, Monomial) else frozenset(g) for g in gens}
    minimal = [s for s in sq if not any(t < s for t in sq)]
    return sorted(minimal, key=lambda s: (len(s), sorted(s)))


@dataclass
class Membership:
    member: bool
    verdicts: dict
    certificates: dict = field(default_factory=dict)

    def as_dict(self):
        return {"member": self.member, "verdicts": self.verdicts, "certificates": self.certificates}


def _divisor_index(gens, mono_support_exps):
    for k, g in enumerate(gens):
        if all(mono_support_exps[j] >= 1 for j in g):
            return k
    return None


def ideal_member_semiample(f: Fan, gens, a, reduction: SemiampleReduction | None = None) -> Membership:
    """Decide S_α ⊂ I for a radical monomial ideal I and semiample α.

    Condition (4) (no maximal cone of Σ_α sees images of rays of every
    generator) decides; (1) sections, (3) B_α and (5) orbit images are
    evaluated independently and must agree.
    """
    if not is_semiample(f, a):
        raise NotSemiample("degree is not semiample")
    red = reduction if reduction is not None else semiample_fan(f, a)
    gens = minimal_generators(gens)
    sigma = red.sigma_alpha
    certs = {}

    # (1) every monomial of S_α lies in I
    basis = sections_basis(f, a)
    cond1 = True
    section_certs = []
    vertex_set = {tuple(v) for v in red.polytope.vertices}
    for u, m in zip(basis.points, basis.monomials):
        k = _divisor_index(gens, m.exponents)
        if k is None:
            cond1 = False
        if tuple(u) in vertex_set or k is None:
            section_certs.append({"point": list(u), "monomial": str(m), "vertex": tuple(u) in vertex_set,
                                  "divisor": k})
    certs["sections"] = section_certs

    # (3) B_α ⊂ I
    cond3 = True
    b_certs = []
    for g in b_alpha_generators(red, f):
        k = next((k for k, z in enumerate(gens) if z <= g), None)
        b_certs.append({"generator": sorted(g), "divisor": k})
        if k is None:
            cond3 = False
    certs["b_alpha"] = b_certs

    # (4) no maximal cone of Σ_α contains images of rays of all colors
    cond4 = True
    for cone in sigma.max_cones:
        witness = []
        for z in gens:
            j = next((j for j in sorted(z) if red.image_in(cone, j)), None)
            if j is None:
                break
            witness.append(j)
        else:
            cond4 = False
            certs["witness_cone"] = {"cone": sorted(cone), "rays": witness}
            break

    # (5) π(Z_1) ∩ ... ∩ π(Z_m) = ∅, with π(V(ρ_j)) = V(π̃(ρ_j))
    cond5 = True
    for cone in sigma.max_cones:
        if all(any(red.pi_tilde[frozenset([j])] <= cone for j in z) for z in gens):
            cond5 = False
            certs["common_orbit"] = sorted(cone)
            break

    verdicts = {"sections": cond1, "b_alpha": cond3, "cones": cond4, "orbits": cond5}
    if len(set(verdicts.values())) != 1:
        raise InternalInconsistency(f"membership conditions disagree: {verdicts}")
    return Membership(cond4, verdicts, certs)


@dataclass(frozen=True)
class Decomposition:
    """F_i = Σ_j A_ij z_j with formal coefficients: entries[i][j] lists (symbol, monomial)."""

    entries: tuple

    def row_sum(self, i, z):
        terms = []
        for j, entry in enumerate(self.entries[i]):
            terms.extend((sym, m * z[j]) for sym, m in entry)
        return sorted(terms)


def decompose_sections(f: Fan, supports, z) -> Decomposition:
    """Assign every term c_{i,u} χ^u of F_i to the smallest j with z_j | χ^u."""
    z = _as_monomials(z, f.nrays)
    rows = []
    for i, sup in enumerate(supports):
        monos = sup.monomials if isinstance(sup, SectionSupport) else _as_monomials(sup, f.nrays)
        entry = [[] for _ in z]
        for t, m in enumerate(monos):
            j = next((j for j, zj in enumerate(z) if zj.divides(m)), None)
            if j is None:
                raise NotDecomposable(i, str(m))
            entry[j].append((f"c{i}_{t}", m / z[j]))
        rows.append(tuple(tuple(e) for e in entry))
    dec = Decomposition(tuple(rows))
    for i, sup in enumerate(supports):
        monos = sup.monomials if isinstance(sup, SectionSupport) else _as_monomials(sup, f.nrays)
        expected = sorted((f"c{i}_{t}", m) for t, m in enumerate(monos))
        if dec.row_sum(i, z) != expected:
            raise InternalInconsistency(f"row {i} does not recombine to F_{i}")
    return dec


# -- residue-one search -----------------------------------------------------

@dataclass
class SearchResult:
    coloring: Coloring | None
    degree: int | None
    examined: int
    pruned: int
    leaves: int

    @property
    def found(self) -> bool:
        return self.coloring is not None

    def as_dict(self):
        if self.found:
            return {
                "status": "found",
                "coloring": [next(iter(s)) for s in self.coloring.colors],
                "degree": self.degree,
                "stats": {"examined": self.examined, "pruned": self.pruned, "leaves": self.leaves},
            }
        return {
            "status": "nonexistence",
            "stats": {"examined": self.examined, "pruned": self.pruned, "leaves": self.leaves},
        }


class _Searcher:
    """Depth-first search over disjoint colorings with incremental pruning."""

    def __init__(self, f: Fan, reductions):
        self.f = f
        self.n = f.dim
        self.simplicial = f if is_simplicial_fan(f) else simplicialize(f)[0]
        # every set of cones whose ray images may not see all n+1 colors
        groups = [[frozenset(c) for c in f.max_cones]]
        for red in reductions:
            groups.append([
                frozenset(j for j in range(f.nrays) if red.image_in(cone, j))
                for cone in red.sigma_alpha.max_cones
            ])
        self.blocks = sorted({b for g in groups for b in g}, key=sorted)
        self.examined = 0
        self.pruned = 0
        self.leaves = 0

    def _violates(self, assign, upto):
        full = self.n + 1
        for block in self.blocks:
            seen = {assign[j] for j in block if j <= upto}
            if len(seen) == full:
                return True
        return False

    def run(self, prefix=()):
        r = self.f.nrays
        assign = list(prefix) + [None] * (r - len(prefix))
        for j in range(len(prefix)):
            if self._violates(assign, j):
                self.pruned += 1
                return None
        return self._dfs(assign, len(prefix))

    def _dfs(self, assign, j):
        r = self.f.nrays
        if j == r:
            self.leaves += 1
            c = Coloring(tuple(frozenset([x]) for x in assign))
            d = cdeg_cones(self.simplicial, c, 0)
            if d == 1:
                return tuple(assign)
            return None
        for color in range(self.n + 1):
            assign[j] = color
            self.examined += 1
            if self._violates(assign, j):
                self.pruned += 1
                continue
            hit = self._dfs(assign, j + 1)
            if hit is not None:
                return hit
        assign[j] = None
        return None


def _search_partition(args):
    f, degrees, first = args
    reds = [semiample_fan(f, a) for a in degrees]
    s = _Searcher(f, reds)
    hit = s.run((first,))
    return hit, s.examined, s.pruned, s.leaves


def search_degree_one(f: Fan, degrees, jobs: int = 1) -> SearchResult:
    """Lexicographically smallest disjoint coloring compatible with every degree and of degree +1."""
    if len(degrees) != f.dim + 1:
        raise ValueError(f"need {f.dim + 1} degrees")
    reds = []
    for a in degrees:
        if not is_semiample(f, a):
            raise NotSemiample(f"degree {list(a)} is not semiample")
        reds.append(semiample_fan(f, a))
    if jobs <= 1 or f.nrays == 0:
        s = _Searcher(f, reds)
        hit = s.run()
        stats = (s.examined, s.pruned, s.leaves)
    else:
        tasks = [(f, [tuple(a) for a in degrees], color) for color in range(f.dim + 1)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_search_partition, tasks))
        hits = [h for h, *_ in results if h is not None]
        hit = min(hits) if hits else None
        stats = tuple(sum(x) for x in zip(*(res[1:] for res in results)))
        stats = (stats[0] + len(tasks), stats[1], stats[2])
    if hit is None:
        return SearchResult(None, None, *stats)
    c = Coloring(tuple(frozenset([x]) for x in hit))
    # the block pruning and the membership test are separate code paths
    degree = cdeg(f, c)
    if degree != 1 or not compatible(f, c, reds):
        raise InternalInconsistency(f"search hit {list(hit)} fails the independent re-check (degree {degree})")
    return SearchResult(c, degree, *stats)


def compatible(f: Fan, c: Coloring, reductions) -> bool:
    """Check a disjoint coloring against every Σ_i through ideal membership."""
    if violating_cone(f, c) is not None:
        return False
    gens = [frozenset(j for j, s in enumerate(c.colors) if i in s) for i in range(f.dim + 1)]
    for red in reductions:
        if not ideal_member_semiample(f, gens, red.a, reduction=red).member:
            return False
    return True


def all_disjoint_refinements(z):
    """Every tuple z' with z'_i | z_i and z'_0...z'_n = x_1...x_r."""
    z = _as_monomials(z)
    r = len(z[0].exponents)
    choices = [[i for i, m in enumerate(z) if m.exponents[j] >= 1] for j in range(r)]
    for pick in product(*choices):
        yield [Monomial(tuple(int(pick[j] == i) for j in range(r))) for i in range(len(z))]


__all__ = [
    "Monomial",
    "coloring_of_tuple",
    "residue_monomials",
    "degree_of",
    "critical_degree",
    "SectionSupport",
    "sections_basis",
    "minimal_generators",
    "Membership",
    "ideal_member_semiample",
    "Decomposition",
    "decompose_sections",
    "SearchResult",
    "search_degree_one",
    "compatible",
    "all_disjoint_refinements",
    "reduce_to_disjoint",
]
