"""Exact computations with P-partition generating series on virtual alphabets.

Commutative side: ``F_P`` and ``N_P``, monomial quasi-symmetric functions
evaluated on the alternating alphabet ``X_m`` and the change of variables to
multirectangular ``p, q`` coordinates.  Noncommutative side: word
quasi-symmetric lifts and the Luoto basis ``bold_F_{P_K}``.
"""

from .algebra import CPoly, NCPoly, SymSeries, Var, cpoly_from_json, cpoly_to_json
from .combinatorics import (
    MultirectCoords,
    center,
    interlacing_from_multirect,
    interlacing_from_partition,
    multirect_from_interlacing,
    partition_from_interlacing,
    set_compositions_of,
)
from .posets import PosetError, RankedPoset, enumerate_order_maps, enumerate_ranked_posets, validate_ranked
from .qsym import (
    F_P,
    NotQuasiSymmetric,
    VirtualEval,
    check_Sx_membership,
    eval_virtual,
    monomial_M,
    monomial_M_virtual,
    qsym_expand,
    substitute_x_to_pq,
    verify_main_theorem,
)
from .superqsym import N_P, check_Spq_membership, i_avoiding_bijection_holds
from .wqsym import bold_F_P, bold_N_P, luoto_expand, luoto_product, splitting_expand

__version__ = "0.1.0"

__all__ = [
    "CPoly", "NCPoly", "SymSeries", "Var", "cpoly_from_json", "cpoly_to_json",
    "MultirectCoords", "center", "interlacing_from_multirect", "interlacing_from_partition",
    "multirect_from_interlacing", "partition_from_interlacing", "set_compositions_of",
    "PosetError", "RankedPoset", "enumerate_order_maps", "enumerate_ranked_posets", "validate_ranked",
    "F_P", "NotQuasiSymmetric", "VirtualEval", "check_Sx_membership", "eval_virtual", "monomial_M",
    "monomial_M_virtual", "qsym_expand", "substitute_x_to_pq", "verify_main_theorem",
    "N_P", "check_Spq_membership", "i_avoiding_bijection_holds",
    "bold_F_P", "bold_N_P", "luoto_expand", "luoto_product", "splitting_expand",
]
