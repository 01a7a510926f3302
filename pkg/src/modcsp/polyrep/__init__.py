"""Polynomial representations of NAND/OR modulo M and related objects."""

from .cover import EXACT, GREEDY, CoverMode, covering_number
from .poly import PLUS_MINUS_ONE, ZERO_ONE, Basis, IntPoly, compose, eval_poly
from .reps import (
    bbr_degree,
    bbr_exponents,
    best_nand_rep,
    crt_combine,
    from_table,
    is_nand_rep_01,
    is_or_rep_pm1,
    nand_bbr,
    nand_to_or_pm1,
    nand_trivial,
    or_trivial_pm1,
    random_rep,
)
from .symmetric import SymPoly, linear_to_prime_poly, lucas_binom, residue_indicator_poly
from .systems import (
    MatchingVectorFamily,
    MrdSystem,
    mrd_to_poly,
    mvf_from_or_poly,
    or_poly_to_subspace,
    poly_to_mrd,
    poly_to_subspace,
    subspace_to_poly,
    unique_point_subspace_to_or_poly,
)
