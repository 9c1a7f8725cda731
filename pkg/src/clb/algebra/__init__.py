"""
Exact scalars and polynomials over F_p and F_{p^2}.
"""

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.algebra.poly import (
    Factorization,
    Poly,
    factor,
    inverse_mod,
    poly,
    poly_dagger,
    poly_star,
)

__all__ = [
    "FieldArray",
    "FieldDescriptor",
    "Factorization",
    "Poly",
    "factor",
    "inverse_mod",
    "poly",
    "poly_dagger",
    "poly_star",
]
