"""Exact noncommutative algebra: presentations, normal forms, Hopf maps."""
from .algebra import AlgebraSpec, NCPoly, REWRITE_BUDGET, RewriteBudgetExceeded, TensorPoly
from .coefficient import Coefficient, D, D_INV, I, ONE, T, ZERO, q_brace, q_bracket_shift, qa, qc
from .presentations import (OQ, PODLES, PODLES_LOC, REGISTRY, UQ, UQ_MP, UQ_PM, get_algebra,
                            uq_deformed)
from .hopf import (antipode, apply_hom, b_element, coproduct, counit, embed_podles, ib_element,
                   iterate_coproduct, pairing, pairing_value, pairing_word, psi_map,
                   spin_half_matrices, star, translation_action, translation_via_pairing)
from .checks import presentation_from_json, presentation_to_json, verify_algebra

__all__ = [
    "AlgebraSpec",
    "NCPoly",
    "REWRITE_BUDGET",
    "RewriteBudgetExceeded",
    "TensorPoly",
    "Coefficient",
    "D",
    "D_INV",
    "I",
    "ONE",
    "T",
    "ZERO",
    "q_brace",
    "q_bracket_shift",
    "qa",
    "qc",
    "OQ",
    "PODLES",
    "PODLES_LOC",
    "REGISTRY",
    "UQ",
    "UQ_MP",
    "UQ_PM",
    "get_algebra",
    "uq_deformed",
    "antipode",
    "apply_hom",
    "b_element",
    "coproduct",
    "counit",
    "embed_podles",
    "ib_element",
    "iterate_coproduct",
    "pairing",
    "pairing_value",
    "pairing_word",
    "psi_map",
    "spin_half_matrices",
    "star",
    "translation_action",
    "translation_via_pairing",
    "presentation_from_json",
    "presentation_to_json",
    "verify_algebra",
    "normal_form",
]


def normal_form(x: NCPoly) -> NCPoly:
    """Re-reduce ``x`` (elements are kept reduced, so this is idempotent)."""
    return NCPoly(x.algebra, x.terms)
