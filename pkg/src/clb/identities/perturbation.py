"""
Rank-one perturbations of the characteristic polynomial.

For A in gl_n, v in F^n and a functional phi, the following agree:
  (1) phi A^k v = 0 for every k >= 0
  (2) ch(A + lambda v (x) phi) = ch(A) as polynomials in an indeterminate lambda
  (4) the lambda-linear part of ch(A + lambda v (x) phi) vanishes
and each implies (3): ch(A + lambda v (x) phi) = ch(A) for some nonzero lambda in F.
"""

from __future__ import annotations

from dataclasses import dataclass

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.algebra.poly import Poly, asc
from clb.linalg.canonical import berkowitz, char_poly
from clb.linalg.matrix import outer, require_square


@dataclass(frozen=True)
class PerturbationVerdict:
    cond_annihilation: bool
    cond_formal_all_lambda: bool
    cond_some_nonzero_lambda: bool
    cond_derivative: bool

    @property
    def consistent(self) -> bool:
        same = self.cond_annihilation == self.cond_formal_all_lambda == self.cond_derivative
        return same and (not self.cond_annihilation or self.cond_some_nonzero_lambda)

    def to_json(self) -> dict[str, bool]:
        return {
            "cond_annihilation": self.cond_annihilation,
            "cond_formal_all_lambda": self.cond_formal_all_lambda,
            "cond_some_nonzero_lambda": self.cond_some_nonzero_lambda,
            "cond_derivative": self.cond_derivative,
        }


def _coeff(P: Poly, i: int) -> int:
    c = asc(P)
    return int(c[i]) if i < c.size else 0


def formal_char_poly(F: FieldDescriptor, A: FieldArray, v: FieldArray, functional: FieldArray) -> list[Poly]:
    """[1, c_1(lambda), ..., c_n(lambda)] of det(x I - A - lambda v (x) phi), each c_i in F[lambda]."""
    n = require_square(A)
    R = outer(v, functional)
    entries = [
        [Poly(F.GF([int(A[i, j]), int(R[i, j])]), order="asc") for j in range(n)]
        for i in range(n)
    ]
    one = Poly.One(field=F.GF)
    zero = Poly.Zero(field=F.GF)
    return berkowitz(entries, one, zero)


def perturbation_verdict(F: FieldDescriptor, A: FieldArray, v: FieldArray, functional: FieldArray) -> PerturbationVerdict:
    n = require_square(A)
    w = v
    annihilated = True
    for _ in range(n):
        if int(functional @ w):
            annihilated = False
            break
        w = A @ w

    coeffs = formal_char_poly(F, A, v, functional)
    formal = all(_all_high_zero(c) for c in coeffs)
    derivative = all(_coeff(c, 1) == 0 for c in coeffs)

    base = char_poly(F, A)
    R = outer(v, functional)
    some = any(char_poly(F, A + lam * R) == base for lam in F.elements()[1:])
    return PerturbationVerdict(annihilated, formal, some, derivative)


def _all_high_zero(c: Poly) -> bool:
    return all(_coeff(c, i) == 0 for i in range(1, int(c.degree) + 1))
