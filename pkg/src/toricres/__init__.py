"""Toric residues of monomial tuples through the combinatorial degree of fan colorings."""
from .coloring import Coloring, cdeg, cdeg_cones, cdeg_flags, pl_degree_oracle
from .fan import Fan, simplicialize, validate
from .polytope import Polytope, normal_fan
from .residue import Monomial, ideal_member_semiample, residue_monomials, search_degree_one
from .semiample import semiample_fan

__version__ = "0.1.0"

__all__ = [
    "Coloring",
    "Fan",
    "Monomial",
    "Polytope",
    "cdeg",
    "cdeg_cones",
    "cdeg_flags",
    "ideal_member_semiample",
    "normal_fan",
    "pl_degree_oracle",
    "residue_monomials",
    "search_degree_one",
    "semiample_fan",
    "simplicialize",
    "validate",
]
