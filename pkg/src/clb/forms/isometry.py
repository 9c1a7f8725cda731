from __future__ import annotations

import logging

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.errors import InputError, InternalCheckError
from clb.forms.space import FormSpace, orthogonal_basis, standard_gram, symplectic_basis
from clb.linalg.matrix import equal, inverse

log = logging.getLogger(__name__)


def _is_square(F: FieldDescriptor, x: FieldArray) -> bool:
    return any(int(e * e) == int(x) for e in F.fixed_units())


def _sqrt(F: FieldDescriptor, x: FieldArray) -> FieldArray:
    for e in F.fixed_units():
        if int(e * e) == int(x):
            return e
    raise InternalCheckError(f"{int(x)} has no square root in F_{F.p}")


def _sum_of_two_squares(F: FieldDescriptor, target: FieldArray) -> tuple[FieldArray, FieldArray]:
    for x in F.fixed_elements():
        for y in F.fixed_elements():
            if int(x * x + y * y) == int(target):
                return x, y
    raise InternalCheckError("no representation as a sum of two squares")


def canonical_basis(S: FormSpace) -> tuple[FieldArray, FieldArray]:
    """
    Columns Q with Q^T B conj(Q) in normal form:
      symmetric  -> diag(1, ..., 1, d), d in {1, r}
      hermitian  -> identity
      symplectic -> J + ... + J
    """
    F = S.field
    if S.kind == "symplectic":
        Q = symplectic_basis(S)
        return Q, standard_gram(F, "symplectic", S.n)
    Q = orthogonal_basis(S)
    G = S.restrict(Q)
    n = S.n
    if S.kind == "hermitian":
        for i in range(n):
            target = G[i, i] ** -1
            c = next(e for e in F.elements() if int(e * F.conj(e)) == int(target))
            Q[:, i] = Q[:, i] * c
        return Q, standard_gram(F, "hermitian", n)

    r = F.scalar(_first_nonsquare(F))
    # scale every diagonal entry to 1 or r
    for i in range(n):
        d = G[i, i]
        if _is_square(F, d):
            Q[:, i] = Q[:, i] * _sqrt(F, d) ** -1
        else:
            Q[:, i] = Q[:, i] * _sqrt(F, r * d**-1)
    G = S.restrict(Q)
    nonsquare = [i for i in range(n) if int(G[i, i]) != 1]
    # r + r = 1 + 1 via x^2 + y^2 = 1/r
    while len(nonsquare) >= 2:
        i, j = nonsquare.pop(0), nonsquare.pop(0)
        x, y = _sum_of_two_squares(F, r**-1)
        u = x * Q[:, i] + y * Q[:, j]
        w = -y * Q[:, i] + x * Q[:, j]
        Q[:, i] = u
        Q[:, j] = w
    if nonsquare:
        last = nonsquare[0]
        order = [i for i in range(n) if i != last] + [last]
        Q = Q[:, order]
    G = S.restrict(Q)
    canon = G.copy()
    return Q, canon


def _first_nonsquare(F: FieldDescriptor) -> int:
    for a in range(2, F.p):
        if not _is_square(F, F.scalar(a)):
            return a
    raise InternalCheckError(f"F_{F.p} has no non-square")


def form_isometry(S1: FormSpace, S2: FormSpace) -> FieldArray | None:
    """
    P with P^T B2 conj(P) = B1, i.e. <Pu, Pv>_2 = <u, v>_1, or None when the
    spaces are not isometric (dimension or discriminant differ).
    """
    if S1.field != S2.field or S1.kind != S2.kind:
        raise InputError("form_isometry needs spaces of the same kind over the same field")
    if S1.n != S2.n:
        return None
    F = S1.field
    Q1, C1 = canonical_basis(S1)
    Q2, C2 = canonical_basis(S2)
    if not equal(C1, C2):
        log.debug("forms differ in discriminant")
        return None
    P = Q2 @ inverse(F, Q1)
    if not equal(P.T @ S2.gram @ F.conj(P), S1.gram):
        raise InternalCheckError("isometry failed its own check")
    return P
