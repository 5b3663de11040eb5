"""SAGBI bases, SAGBI-Groebner bases and syzygies over subalgebras of R[X].

``R`` is the integers or the rationals.  Everything is exact and every
answer carries a certificate that can be replayed by plain polynomial
arithmetic.
"""

from .diophantine import DiophantineSystem, nonneg_solutions, quotient_memberships
from .grobner import (
    IdealBasis,
    evaluation_kernel,
    groebner_basis,
    ideal_intersection,
    module_syzygies,
    monomial_algebra_syzygies,
    normal_form,
)
from .poly import BlockOrder, PolyRing, Polynomial, TermOrder, format_poly, tx_degree
from .ring import Domain, constant_syzygy_generators, ideal_membership_witness
from .sg import (
    IdealPresentation,
    LtSyzygyVector,
    SGRepresentation,
    SGResult,
    ideal_member,
    lt_syzygy_generators,
    sg_construct,
    sg_verify,
    si_reduce,
)
from .subalgebra import (
    AlgebraElement,
    NotInSubalgebraError,
    NotVerifiedError,
    SagbiResult,
    SReductionCertificate,
    SubalgebraPresentation,
    s_reduce,
    sagbi_construct,
    sagbi_verify,
    subalgebra_member,
)
from .syzygy import (
    BasisMatrices,
    SyzygyVector,
    change_of_basis,
    module_search,
    sg_syzygy_generators,
    subset_syzygy_generators,
)
from .textio import ProblemError, parse_polynomial, parse_problem

__all__ = [
    "AlgebraElement",
    "BasisMatrices",
    "BlockOrder",
    "DiophantineSystem",
    "Domain",
    "IdealBasis",
    "IdealPresentation",
    "LtSyzygyVector",
    "NotInSubalgebraError",
    "NotVerifiedError",
    "PolyRing",
    "Polynomial",
    "ProblemError",
    "SGRepresentation",
    "SGResult",
    "SReductionCertificate",
    "SagbiResult",
    "SubalgebraPresentation",
    "SyzygyVector",
    "TermOrder",
    "change_of_basis",
    "constant_syzygy_generators",
    "evaluation_kernel",
    "format_poly",
    "groebner_basis",
    "ideal_intersection",
    "ideal_member",
    "ideal_membership_witness",
    "lt_syzygy_generators",
    "module_search",
    "module_syzygies",
    "monomial_algebra_syzygies",
    "nonneg_solutions",
    "normal_form",
    "parse_polynomial",
    "parse_problem",
    "quotient_memberships",
    "s_reduce",
    "sagbi_construct",
    "sagbi_verify",
    "sg_construct",
    "sg_syzygy_generators",
    "sg_verify",
    "si_reduce",
    "subalgebra_member",
    "subset_syzygy_generators",
    "tx_degree",
]
