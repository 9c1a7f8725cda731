from __future__ import annotations

from clb.algebra.field import FieldArray
from clb.algebra.poly import Poly, congruent, inverse_mod, poly_at, poly_star
from clb.errors import PreconditionError
from clb.forms.space import FormSpace, phi
from clb.forms.twisted import TwistedElement, apply_algebra, apply_vector
from clb.linalg.canonical import char_poly
from clb.linalg.matrix import equal


def nu(S: FormSpace, A: FieldArray, v: FieldArray, lam: FieldArray) -> tuple[FieldArray, FieldArray]:
    """(A, v) -> (A + lambda phi_v, v) on u and sp."""
    F = S.field
    if S.kind == "symmetric":
        raise PreconditionError("nu is not defined on o; use mu")
    if S.kind == "hermitian" and int(F.conj(lam)) != int(-lam):
        raise PreconditionError("nu on u needs conj(lambda) = -lambda")
    S.require_lie(A)
    return A + lam * phi(S, v), v


def mu(S: FormSpace, A: FieldArray, v: FieldArray, lam: FieldArray) -> tuple[FieldArray, FieldArray]:
    """(A, v) -> (A + lambda (A phi_v + phi_v A), v) on o."""
    if S.kind != "symmetric":
        raise PreconditionError("mu is defined on o only")
    S.require_lie(A)
    P = phi(S, v)
    return A + lam * (A @ P + P @ A), v


def rho_preconditions(S: FormSpace, A: FieldArray, g: Poly) -> list[str]:
    F = S.field
    f = char_poly(F, A)
    problems: list[str] = []
    try:
        inverse_mod(F, g, f)
    except PreconditionError:
        problems.append("g is not coprime to the characteristic polynomial")
    if not congruent(poly_star(F, g), g, f):
        problems.append("g* is not congruent to g modulo the characteristic polynomial")
    return problems


def rho(S: FormSpace, A: FieldArray, v: FieldArray, g: Poly) -> tuple[FieldArray, FieldArray]:
    """(A, v) -> (A, g(A) v)."""
    problems = rho_preconditions(S, A, g)
    if problems:
        raise PreconditionError("; ".join(problems))
    return A, poly_at(S.field, g, A) @ v


def rho_inverse(S: FormSpace, A: FieldArray, v: FieldArray, g: Poly) -> tuple[FieldArray, FieldArray]:
    F = S.field
    ginv = inverse_mod(F, g, char_poly(F, A))
    return rho(S, A, v, ginv)


def delta(S: FormSpace, A: FieldArray) -> Poly:
    """The characteristic polynomial map on g x V (projecting to g)."""
    return char_poly(S.field, A)


def rho_equivariant(S: FormSpace, A: FieldArray, v: FieldArray, g: Poly, t: TwistedElement) -> bool:
    """rho_g(t.(A, v)) = t.rho_g(A, v)."""
    moved_A = apply_algebra(S, t, A)
    moved_v = apply_vector(S, t, v)
    _, lhs = rho(S, moved_A, moved_v, g)
    _, w = rho(S, A, v, g)
    return equal(lhs, apply_vector(S, t, w))
