"""
Characteristic / minimal polynomials, rational canonical form and similarity witnesses.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence, TypeVar

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.algebra.poly import Poly, asc, factor, poly_at, poly_key
from clb.errors import InconsistentSystemError, InternalCheckError, ShapeError
from clb.linalg.matrix import (
    block_diag,
    equal,
    express,
    hstack,
    identity,
    inverse,
    krylov,
    require_square,
    zeros,
)
from clb.linalg.subspace import Subspace

log = logging.getLogger(__name__)

R = TypeVar("R")


def berkowitz(M: Sequence[Sequence[R]], one: R, zero: R) -> list[R]:
    """
    Division-free characteristic polynomial over any commutative ring.

    Returns [1, c_1, ..., c_n] with det(xI - M) = x^n + c_1 x^{n-1} + ... + c_n.
    """
    n = len(M)
    if n == 0:
        return [one]
    vec: list[R] = [one, -M[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        size = n - k
        a = M[k][k]
        row = [M[k][j] for j in range(k + 1, n)]
        w = [M[i][k] for i in range(k + 1, n)]
        diags: list[R] = [one, -a]
        for _ in range(size - 1):
            acc = zero
            for r_, w_ in zip(row, w):
                acc = acc + r_ * w_
            diags.append(-acc)
            w = [
                _dot([M[i][j] for j in range(k + 1, n)], w, zero)
                for i in range(k + 1, n)
            ]
        new: list[R] = []
        for i in range(size + 1):
            acc = zero
            for j in range(min(i, size - 1) + 1):
                acc = acc + diags[i - j] * vec[j]
            new.append(acc)
        vec = new
    return vec


def _dot(u: Sequence[R], v: Sequence[R], zero: R) -> R:
    acc = zero
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def char_poly(F: FieldDescriptor, A: FieldArray) -> Poly:
    n = require_square(A)
    if n == 0:
        return Poly.One(field=F.GF)
    return A.characteristic_poly()


def min_poly(F: FieldDescriptor, A: FieldArray) -> Poly:
    n = require_square(A)
    if n == 0:
        return Poly.One(field=F.GF)
    powers = [identity(F, n)]
    for k in range(1, n + 1):
        target = powers[-1] @ A
        basis = zeros(F, n * n, len(powers))
        for j, P in enumerate(powers):
            basis[:, j] = P.reshape(-1)
        try:
            c = express(F, basis, target.reshape(-1))
        except InconsistentSystemError:
            powers.append(target)
            continue
        coeffs = F.GF.Zeros(k + 1)
        coeffs[k] = 1
        coeffs[:k] = -c[:, 0]
        return Poly(coeffs, order="asc")
    raise InternalCheckError("Cayley-Hamilton bound exceeded")


def companion(F: FieldDescriptor, f: Poly) -> FieldArray:
    """Sub-diagonal ones, last column -(a_0, ..., a_{N-1}) for monic f of degree N."""
    N = int(f.degree)
    C = zeros(F, N, N)
    for i in range(N - 1):
        C[i + 1, i] = 1
    C[:, N - 1] = -asc(f)[:N]
    return C


def is_regular(F: FieldDescriptor, A: FieldArray) -> bool:
    return min_poly(F, A) == char_poly(F, A)


def is_minimal_regular(F: FieldDescriptor, A: FieldArray) -> bool:
    ch = char_poly(F, A)
    return min_poly(F, A) == ch and len(factor(F, ch).factors) <= 1


@dataclass(frozen=True)
class Eigenspace:
    f: Poly
    multiplicity: int
    space: Subspace


def generalized_eigenspaces(F: FieldDescriptor, A: FieldArray) -> list[Eigenspace]:
    """ker f(A)^m for each irreducible factor f^m of the characteristic polynomial."""
    n = require_square(A)
    out: list[Eigenspace] = []
    for f, m in factor(F, char_poly(F, A)).factors:
        fA = poly_at(F, f, A)
        P = identity(F, n)
        for _ in range(m):
            P = P @ fA
        out.append(Eigenspace(f=f, multiplicity=m, space=Subspace.kernel(F, P)))
    return out


@dataclass(frozen=True)
class CompanionBlock:
    f: Poly
    d: int

    @property
    def size(self) -> int:
        return int(self.f.degree) * self.d


@dataclass(frozen=True)
class RationalForm:
    """P @ A @ P^{-1} = block_diag(companion(f^d) for each block)."""

    field: FieldDescriptor
    blocks: list[CompanionBlock]
    change_of_basis: FieldArray

    def matrix(self) -> FieldArray:
        return block_diag(self.field, [companion(self.field, b.f**b.d) for b in self.blocks])

    def invariant(self) -> list[tuple[tuple[int, tuple[int, ...]], int]]:
        return [(poly_key(b.f), b.d) for b in self.blocks]


def primary_tops(F: FieldDescriptor, A: FieldArray, f: Poly, space: Subspace) -> list[tuple[FieldArray, int]]:
    """
    Cyclic generators of the f-primary component `space`: pairs (v, s) with
    Z(v) of dimension deg(f)*s, whose sum is direct and equals `space`.
    Larger s first; within a level, echelon order of ker f(A)^s.
    """
    n = A.shape[0]
    k = int(f.degree)
    fA = poly_at(F, f, A)
    kernels = [Subspace.zero(F, n)]
    P = identity(F, n)
    while kernels[-1].dim < space.dim:
        P = P @ fA
        kernels.append(Subspace.kernel(F, P))
    top = len(kernels) - 1
    tops: list[tuple[FieldArray, int]] = []
    for s in range(top, 0, -1):
        upper = kernels[min(s + 1, top)]
        S = kernels[s - 1] + upper.apply(fA)
        for b in kernels[s].rows:
            if S.contains(b):
                continue
            tops.append((b, s))
            S = S + Subspace.span(F, n, krylov(F, A, b, k))
            if S.dim == kernels[s].dim:
                break
    return tops


def rational_canonical_form(F: FieldDescriptor, A: FieldArray) -> RationalForm:
    n = require_square(A)
    blocks: list[CompanionBlock] = []
    cols: list[FieldArray] = []
    for es in generalized_eigenspaces(F, A):
        k = int(es.f.degree)
        tops = sorted(primary_tops(F, A, es.f, es.space), key=lambda t: t[1])
        for v, s in tops:
            blocks.append(CompanionBlock(f=es.f, d=s))
            cols.append(krylov(F, A, v, k * s))
    Q = hstack(F, n, cols)
    P = inverse(F, Q)
    log.debug("rational canonical form: %s blocks", len(blocks))
    return RationalForm(field=F, blocks=blocks, change_of_basis=P)


def similarity_witness(F: FieldDescriptor, A: FieldArray, C: FieldArray) -> FieldArray | None:
    """Some invertible P with P A P^{-1} = C, or None when A and C are not similar."""
    if require_square(A) != require_square(C):
        raise ShapeError(f"size mismatch {A.shape} vs {C.shape}")
    ra = rational_canonical_form(F, A)
    rc = rational_canonical_form(F, C)
    if ra.invariant() != rc.invariant():
        return None
    P = inverse(F, rc.change_of_basis) @ ra.change_of_basis
    if not equal(P @ A @ inverse(F, P), C):
        raise InternalCheckError("similarity witness failed its own check")
    return P
