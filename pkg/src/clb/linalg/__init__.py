"""
Exact matrices over F_p / F_{p^2}: echelon forms, subspaces, canonical forms.
"""

from clb.linalg.canonical import (
    CompanionBlock,
    Eigenspace,
    RationalForm,
    berkowitz,
    char_poly,
    companion,
    generalized_eigenspaces,
    is_minimal_regular,
    is_regular,
    min_poly,
    rational_canonical_form,
    similarity_witness,
)
from clb.linalg.subspace import Subspace

__all__ = [
    "CompanionBlock",
    "Eigenspace",
    "RationalForm",
    "Subspace",
    "berkowitz",
    "char_poly",
    "companion",
    "generalized_eigenspaces",
    "is_minimal_regular",
    "is_regular",
    "min_poly",
    "rational_canonical_form",
    "similarity_witness",
]
