"""Exact polynomial arithmetic and irreducibility certificates."""

from .irreducible import (
    IrreducibilityResult,
    SpecializationCertificate,
    Verdict,
    absolutely_irreducible,
    find_specialization_certificate,
    z_irreducible_by_specialization,
)
from .mpoly import MPoly, content_in, gcd, parse, squarefree_part, strip_factor
from .polytope import NewtonPolytope, gao_coprime_test, minkowski_sum, newton_polytope, vertex_gcd
from .upoly import (
    UPoly,
    fp_irreducible,
    fp_irreducible_bruteforce,
    rational_factors,
    resultant,
    squarefree,
    sturm_real_roots,
)

__all__ = [
    "IrreducibilityResult", "MPoly", "NewtonPolytope", "SpecializationCertificate", "UPoly",
    "Verdict", "absolutely_irreducible", "content_in", "find_specialization_certificate",
    "fp_irreducible", "fp_irreducible_bruteforce", "gao_coprime_test", "gcd", "minkowski_sum",
    "newton_polytope", "parse", "rational_factors", "resultant", "squarefree", "squarefree_part",
    "strip_factor", "sturm_real_roots", "vertex_gcd", "z_irreducible_by_specialization",
]
