"""
Descent of a semisimple isotypic symplectic element to a hermitian space.

For A in sp(V) with char poly f^s, f irreducible of even degree k, f* = f and
f(A) = 0, V is an m-vector space for m = F[T]/f (T acting as A). The involution
T -> -T of m is the Frobenius power x -> x^(p^(k/2)) and l = Tr_{m/F} satisfies
l(sigma z) = l(z). S(v, v') in m is defined by <h(A) v, v'> = l(S(v, v') h(T))
for every h, and T*S is hermitian on V_m. An F-linear X commuting with A
preserves B exactly when its m-linear avatar preserves T*S.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import galois
import numpy as np

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.algebra.poly import Poly, factor, monic_star, poly_at, poly_str, poly_to_json
from clb.errors import PreconditionError
from clb.forms.space import FormSpace
from clb.linalg.canonical import char_poly
from clb.linalg.matrix import equal, express, hstack, is_zero, krylov
from clb.linalg.subspace import Subspace

log = logging.getLogger(__name__)


def unitary_group_order(q: int, s: int) -> int:
    """|U_s(q)| = q^{s(s-1)/2} * prod_{i=1}^{s} (q^i - (-1)^i)."""
    out = q ** (s * (s - 1) // 2)
    for i in range(1, s + 1):
        out *= q**i - (-1) ** i
    return out


def _same(a: FieldArray, b: FieldArray) -> bool:
    return a.shape == b.shape and bool(np.array_equal(a.view(np.ndarray), b.view(np.ndarray)))


@dataclass(frozen=True, eq=False)
class Descent:
    space: FormSpace
    operator: FieldArray
    f: Poly
    extension: type[FieldArray]
    basis: FieldArray
    gram: FieldArray

    @property
    def degree(self) -> int:
        return int(self.f.degree)

    @property
    def rank(self) -> int:
        """dim of V over m."""
        return int(self.basis.shape[1])

    @property
    def T(self) -> FieldArray:
        return self.extension(self.space.field.p)

    def sigma(self, z: FieldArray) -> FieldArray:
        return z ** (self.space.field.p ** (self.degree // 2))

    def trace(self, z: FieldArray) -> int:
        return int(z.field_trace())

    @cached_property
    def _trace_inverse(self) -> FieldArray:
        P = self.space.field.GF
        k = self.degree
        tau = [self.trace(self.T**t) for t in range(2 * k - 1)]
        M = P([[tau[i + j] for j in range(k)] for i in range(k)])
        return np.linalg.inv(M)

    def sesquilinear(self, v: FieldArray, w: FieldArray) -> FieldArray:
        """S(v, w): solves <A^i v, w> = l(S T^i) for i < k."""
        S = self.space
        k = self.degree
        b = S.field.GF.Zeros(k)
        u = v
        for i in range(k):
            b[i] = S.pair(u, w)
            u = self.operator @ u
        y = self._trace_inverse @ b
        return self._from_coeffs(y)

    def _from_coeffs(self, coeffs: FieldArray) -> FieldArray:
        out = self.extension(0)
        Tp = self.extension(1)
        for c in coeffs:
            out = out + self.extension(int(c)) * Tp
            Tp = Tp * self.T
        return out

    def is_hermitian(self) -> bool:
        G = self.gram
        return _same(self.sigma(G).T, G)

    def avatar(self, X: FieldArray) -> FieldArray:
        """The m-matrix of an F-linear X commuting with A, in the m-basis."""
        F = self.space.field
        if not equal(X @ self.operator, self.operator @ X):
            raise PreconditionError("X does not commute with A")
        k = self.degree
        K = hstack(F, self.space.n, [krylov(F, self.operator, b, k) for b in self.basis.T])
        coords = express(F, K, X @ self.basis)
        out = self.extension.Zeros((self.rank, self.rank))
        for a in range(self.rank):
            for c in range(self.rank):
                out[c, a] = self._from_coeffs(coords[c * k:(c + 1) * k, a])
        return out

    def preserves_hermitian(self, X: FieldArray) -> bool:
        M = self.avatar(X)
        lhs = M.T @ self.gram @ self.sigma(M)
        return _same(lhs, self.gram)

    def correspondence_holds(self, X: FieldArray) -> bool:
        """X in Sp(V) iff its avatar is in U(V_m, T*S)."""
        return self.space.in_group(X) == self.preserves_hermitian(X)

    def unitary_order(self) -> int:
        return unitary_group_order(self.space.field.p ** (self.degree // 2), self.rank)

    def hermitian_space(self) -> FormSpace | None:
        """For deg f = 2: the same hermitian space over F_p[w], w^2 = r, with T -> c w."""
        if self.degree != 2:
            return None
        K = FieldDescriptor(self.space.field.p, 2)
        return FormSpace(K, "hermitian", self.transport(self.gram), "U")

    def transport(self, M: FieldArray) -> FieldArray:
        """An m-matrix rewritten over F_p[w] through T -> c w, c^2 = -a_0 / r (deg f = 2 only)."""
        if self.degree != 2:
            raise PreconditionError("transport to F_p[w] needs deg f = 2")
        F = self.space.field
        K = FieldDescriptor(F.p, 2)
        a0 = int(self.f.coeffs[-1])
        target = F.scalar(-a0) * F.scalar(K.nonresidue) ** -1
        c = next(int(e) for e in F.fixed_units() if int(e * e) == int(target))
        p = F.p
        ints = np.asarray(M.view(np.ndarray), dtype=np.int64)
        out = K.GF.Zeros(ints.shape)
        for idx in np.ndindex(*ints.shape):
            z = int(ints[idx])
            out[idx] = K.scalar(z % p, (z // p) * c)
        return out

    def to_json(self) -> dict[str, Any]:
        F = self.space.field
        herm = self.hermitian_space()
        return {
            "f": poly_to_json(F, self.f),
            "f_str": poly_str(F, self.f),
            "extension_order": int(self.extension.order),
            "rank": self.rank,
            "basis": F.encode(self.basis),
            "gram": self.gram.view(np.ndarray).astype(int).tolist(),
            "hermitian_gram": herm.field.encode(herm.gram) if herm is not None else None,
            "unitary_order": self.unitary_order(),
        }


def _m_basis(F: FieldDescriptor, A: FieldArray, k: int) -> FieldArray:
    """Greedy m-basis from the standard basis vectors."""
    n = A.shape[0]
    span = Subspace.zero(F, n)
    picked: list[FieldArray] = []
    for i in range(n):
        e = F.GF.Zeros(n)
        e[i] = 1
        if span.contains(e):
            continue
        picked.append(e.reshape(-1, 1))
        span = span + Subspace.span(F, n, krylov(F, A, e, k))
        if span.dim == n:
            break
    return hstack(F, n, picked)


def descend_to_unitary(S: FormSpace, A: FieldArray) -> Descent:
    if S.kind != "symplectic":
        raise PreconditionError("descent is defined for symplectic spaces")
    S.require_lie(A)
    F = S.field
    fac = factor(F, char_poly(F, A))
    if len(fac.factors) != 1:
        raise PreconditionError("descent requires a single irreducible factor")
    f, _ = fac.factors[0]
    k = int(f.degree)
    if k % 2:
        raise PreconditionError("descent requires even-degree f")
    if monic_star(F, f) != f:
        raise PreconditionError("descent requires f* = ±f")
    if not is_zero(poly_at(F, f, A)):
        raise PreconditionError("A is not annihilated by f")
    m = galois.GF(F.p**k, irreducible_poly=f)
    basis = _m_basis(F, A, k)
    d = Descent(S, A, f, m, basis, m.Zeros((basis.shape[1], basis.shape[1])))
    s = basis.shape[1]
    G = m.Zeros((s, s))
    for a in range(s):
        for b in range(s):
            G[a, b] = d.T * d.sesquilinear(basis[:, a], basis[:, b])
    out = Descent(S, A, f, m, basis, G)
    if not out.is_hermitian():
        raise PreconditionError("constructed form is not hermitian")
    log.info("descent: f = %s, rank %s over GF(%s)", poly_str(F, f), s, m.order)
    return out


def centralizer_in_group(S: FormSpace, A: FieldArray, elements: list[FieldArray]) -> list[FieldArray]:
    return [g for g in elements if equal(g @ A, A @ g)]

