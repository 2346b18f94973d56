"""Exception hierarchy.

Every error raised for a violated mathematical precondition derives from
:class:`DomainError`; the CLI maps those to exit code 2.  An
:class:`InternalInconsistency` means two independent routes disagreed and
maps to exit code 3.
"""


class ToricError(Exception):
    """Base class for all library errors."""


class DomainError(ToricError):
    """Input violates a precondition of the requested computation."""


class InternalInconsistency(ToricError):
    """Independent computations of the same quantity disagree."""


# exact_lattice

class NonSquare(DomainError):
    pass


class ZeroVector(DomainError):
    pass


class NoSolution(DomainError):
    pass


class IntegralityFailure(DomainError):
    """A rational solution exists but no integral one does."""

    def __init__(self, solution):
        self.solution = solution
        super().__init__(f"no integral solution; rational solution {tuple(map(str, solution))}")


# polytope_faces

class DegeneratePolytope(DomainError):
    pass


class OriginNotInterior(DomainError):
    pass


class EmptyPolytope(DomainError):
    pass


# fan_engine

class MalformedFan(DomainError):
    pass


class NotProjective(DomainError):
    pass


class NotRefinement(DomainError):
    def __init__(self, cone):
        self.cone = cone
        super().__init__(f"cone {sorted(cone)} lies in no cone of the coarse fan")


# coloring_degree

class NotSimplicialColoring(DomainError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"coloring is not simplicial: {witness}")


class EmptyColorSet(DomainError):
    pass


class NotDisjoint(DomainError):
    pass


class NotSimplicialFan(DomainError):
    pass


class DegenerateSampling(ToricError):
    pass


# semiample_reduction

class NotCartier(DomainError):
    def __init__(self, cone):
        self.cone = cone
        super().__init__(f"divisor is not Cartier on cone {sorted(cone)}")


class NotSemiample(DomainError):
    pass


# residue_and_ideals

class UncoloredRay(DomainError):
    def __init__(self, ray):
        self.ray = ray
        super().__init__(f"x_{ray + 1} divides none of the monomials")


class NotDivisible(DomainError):
    pass


class CommonZero(DomainError):
    def __init__(self, witness):
        self.witness = witness
        rays = [j + 1 for j in sorted(witness.cone)]
        super().__init__(f"monomials vanish simultaneously on the orbit of the cone of rays {rays}")


class NotDecomposable(DomainError):
    def __init__(self, row, monomial):
        self.row = row
        self.monomial = monomial
        super().__init__(f"term {monomial} of F_{row} is divisible by no z_j")
