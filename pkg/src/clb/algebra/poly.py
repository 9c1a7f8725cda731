"""
Univariate polynomials over a FieldDescriptor, on top of galois.Poly.

Coefficient arrays crossing this module boundary are lowest-degree-first;
galois keeps them highest-first internally.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

import galois
import numpy as np

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.errors import PreconditionError

log = logging.getLogger(__name__)

Poly = galois.Poly


def poly(F: FieldDescriptor, coeffs_asc: Sequence[Any] | FieldArray) -> Poly:
    if isinstance(coeffs_asc, F.GF):
        vals = coeffs_asc
    else:
        vals = F.array(list(coeffs_asc), 1) if len(coeffs_asc) else F.GF([])
    if vals.size == 0:
        return Poly.Zero(field=F.GF)
    return Poly(vals, order="asc")


def x_poly(F: FieldDescriptor) -> Poly:
    return Poly.Identity(field=F.GF)


def constant(F: FieldDescriptor, c: Any) -> Poly:
    value = c if isinstance(c, F.GF) else F.scalar(int(c))
    return Poly(value.reshape(1))


def asc(f: Poly) -> FieldArray:
    return f.coeffs[::-1]


def is_zero(f: Poly) -> bool:
    return not np.any(f.coeffs)


def leading(f: Poly) -> FieldArray:
    return f.coeffs[0]


def scale(f: Poly, c: FieldArray) -> Poly:
    if is_zero(f):
        return f
    return Poly(f.coeffs * c)


def monic(f: Poly) -> Poly:
    if is_zero(f):
        raise PreconditionError("zero polynomial")
    return scale(f, leading(f) ** -1)


def conj_poly(F: FieldDescriptor, f: Poly) -> Poly:
    return Poly(F.conj(f.coeffs))


def poly_star(F: FieldDescriptor, f: Poly) -> Poly:
    """f*(x) = sum (-1)^i conj(a_i) x^i."""
    c = F.conj(asc(f).copy())
    c[1::2] = -c[1::2]
    return Poly(c, order="asc")


def poly_dagger(F: FieldDescriptor, f: Poly) -> Poly:
    """f^dagger(x) = sum conj(a_{n-i}) x^i."""
    c = asc(f)
    return Poly(F.conj(c[::-1].copy()), order="asc")


def star_sign(F: FieldDescriptor, f: Poly) -> int | None:
    """+1 if f* = f, -1 if f* = -f, None otherwise."""
    s = poly_star(F, f)
    if s == f:
        return 1
    if s == -f:
        return -1
    return None


def monic_star(F: FieldDescriptor, f: Poly) -> Poly:
    return monic(poly_star(F, f))


def poly_key(f: Poly) -> tuple[int, tuple[int, ...]]:
    """Canonical ordering: degree first, then ascending coefficient integers."""
    ints = np.asarray(asc(f).view(np.ndarray), dtype=np.int64)
    return int(f.degree), tuple(int(x) for x in ints)


@dataclass(frozen=True)
class Factorization:
    unit: FieldArray
    factors: list[tuple[Poly, int]] = dc_field(default_factory=list)

    def expand(self) -> Poly:
        out = Poly(self.unit.reshape(1))
        for g, e in self.factors:
            out = out * g**e
        return out


def factor(F: FieldDescriptor, f: Poly) -> Factorization:
    """Monic irreducible factors with multiplicities, sorted by `poly_key`."""
    if is_zero(f):
        raise PreconditionError("zero polynomial")
    unit = leading(f)
    if f.degree == 0:
        return Factorization(unit=unit)
    facs, mults = monic(f).factors()
    pairs = sorted(zip(facs, (int(m) for m in mults)), key=lambda t: poly_key(t[0]))
    return Factorization(unit=unit, factors=list(pairs))


def inverse_mod(F: FieldDescriptor, g: Poly, f: Poly) -> Poly:
    if f.degree < 1:
        raise PreconditionError("modulus must have positive degree")
    d, s, _ = galois.egcd(g, f)
    if d.degree != 0 or is_zero(d):
        raise PreconditionError("not invertible modulo f")
    return scale(s, leading(d) ** -1) % f


def congruent(g: Poly, h: Poly, f: Poly) -> bool:
    return is_zero((g - h) % f)


def poly_at(F: FieldDescriptor, f: Poly, A: FieldArray) -> FieldArray:
    """Horner evaluation at a square matrix."""
    n = A.shape[0]
    ident = F.GF.Identity(n)
    out = F.GF.Zeros((n, n))
    for c in f.coeffs:
        out = out @ A + c * ident
    return out


def poly_to_json(F: FieldDescriptor, f: Poly) -> list[list[int]]:
    if is_zero(f):
        return []
    return F.encode(asc(f))


def poly_from_json(F: FieldDescriptor, data: Sequence[Any]) -> Poly:
    return poly(F, list(data))


def scalar_str(F: FieldDescriptor, c: FieldArray) -> str:
    a, b = F.coords(c)
    if not b:
        return str(a)
    if not a:
        return "w" if b == 1 else f"{b}w"
    return f"({a}+{b}w)" if b != 1 else f"({a}+w)"


def poly_str(F: FieldDescriptor, f: Poly) -> str:
    if is_zero(f):
        return "0"
    terms: list[str] = []
    for i, c in reversed(list(enumerate(asc(f)))):
        if int(c) == 0:
            continue
        cs = scalar_str(F, c)
        if i == 0:
            terms.append(cs)
        else:
            mono = "x" if i == 1 else f"x^{i}"
            terms.append(mono if int(c) == 1 else f"{cs}{mono}")
    return " + ".join(terms)
