"""
Cayley transforms between G and g.

    C_1(g)  = (I + g)(I - g)^{-1}     inverse  B -> (B - I)(B + I)^{-1}
    C_-1(g) = (I - g)(I + g)^{-1}     inverse  B -> (I - B)(I + B)^{-1}
"""

from __future__ import annotations

from clb.algebra.field import FieldArray
from clb.errors import InputError, MembershipError, PreconditionError
from clb.forms.space import FormSpace
from clb.forms.twisted import TwistedElement, apply_algebra, apply_group
from clb.linalg.matrix import det, equal, identity, inverse

VARIANTS = (1, -1)


def _check_variant(variant: int) -> None:
    if variant not in VARIANTS:
        raise InputError(f"cayley variant must be 1 or -1, got {variant}")


def _singular(S: FormSpace, X: FieldArray) -> bool:
    return int(det(S.field, X)) == 0


def cayley(S: FormSpace, g: FieldArray, variant: int = 1) -> FieldArray:
    """G_(variant) -> g_0."""
    _check_variant(variant)
    if not S.in_group(g):
        raise MembershipError("element is not in G(V)")
    I = identity(S.field, S.n)
    if variant == 1:
        if _singular(S, I - g):
            raise PreconditionError("1 is an eigenvalue")
        return (I + g) @ inverse(S.field, I - g)
    if _singular(S, I + g):
        raise PreconditionError("-1 is an eigenvalue")
    return (I - g) @ inverse(S.field, I + g)


def cayley_inv(S: FormSpace, B: FieldArray, variant: int = 1) -> FieldArray:
    """g_0 -> G."""
    _check_variant(variant)
    S.require_lie(B)
    I = identity(S.field, S.n)
    if _singular(S, B + I) or _singular(S, B - I):
        raise PreconditionError("±1 is an eigenvalue")
    if variant == 1:
        return (B - I) @ inverse(S.field, B + I)
    return (I - B) @ inverse(S.field, I + B)


def in_g0(S: FormSpace, B: FieldArray) -> bool:
    I = identity(S.field, S.n)
    return S.in_lie_algebra(B) and not _singular(S, B + I) and not _singular(S, B - I)


def in_cayley_domain(S: FormSpace, g: FieldArray, variant: int = 1) -> bool:
    """g in G with `variant` not an eigenvalue."""
    I = identity(S.field, S.n)
    return S.in_group(g) and not _singular(S, I - g if variant == 1 else I + g)


def equivariant(S: FormSpace, g: FieldArray, t: TwistedElement, variant: int = 1) -> bool:
    """cayley(t.g) = t.cayley(g), for t in either coset."""
    moved = apply_group(S, t, g)
    return equal(cayley(S, moved, variant), apply_algebra(S, t, cayley(S, g, variant)))
