from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.algebra.poly import Poly, poly
from clb.errors import PreconditionError
from clb.forms.space import FormSpace, nonisotropic_vector
from clb.forms.twisted import TwistedElement, compose
from clb.identities.cayley import cayley_inv, in_g0
from clb.linalg.matrix import identity, outer, zeros
from clb.witness.witness import witness_global


class Sampler:
    """Seeded random elements of g, V, G and the twisted coset of one form space."""

    def __init__(self, S: FormSpace, seed: int = 0):
        self.S = S
        self.F = S.field
        self.rng = np.random.default_rng(seed)

    # --- scalars and vectors ----------------------------------------------

    def scalar(self, nonzero: bool = False) -> FieldArray:
        lo = 1 if nonzero else 0
        return self.F.GF(int(self.rng.integers(lo, self.F.q)))

    def vector(self) -> FieldArray:
        return self.F.GF(self.rng.integers(0, self.F.q, size=self.S.n))

    def matrix(self) -> FieldArray:
        n = self.S.n
        return self.F.GF(self.rng.integers(0, self.F.q, size=(n, n)))

    # --- Lie algebra ------------------------------------------------------

    def lie(self) -> FieldArray:
        """Uniform over g: random F_p coordinates on its F_p-basis."""
        A = zeros(self.F, self.S.n, self.S.n)
        for X in self.S.lie_basis:
            c = int(self.rng.integers(0, self.F.p))
            if c:
                A = A + self.F.GF(c) * X
        return A

    def lie_g0(self, tries: int = 64) -> FieldArray | None:
        for _ in range(tries):
            B = self.lie()
            if in_g0(self.S, B):
                return B
        return None

    # --- groups -----------------------------------------------------------

    def reflection(self) -> FieldArray:
        """x -> x - 2<x, v>/<v, v> v for a random non-isotropic v (symmetric kind)."""
        S = self.S
        v = self.vector()
        if int(S.pair(v, v)) == 0:
            v = nonisotropic_vector(S)
        c = (self.F.GF(2) * S.pair(v, v) ** -1)
        # <x, v> = x^T B v, so the map is I - c v (B v)^T
        return identity(self.F, S.n) - c * outer(v, S.gram @ v)

    def group(self) -> FieldArray:
        """A product of two inverse Cayley transforms (times a reflection for O, half the time)."""
        S = self.S
        g = identity(self.F, S.n)
        for _ in range(2):
            B = self.lie_g0()
            if B is not None:
                g = g @ cayley_inv(S, B)
        if S.group == "O" and S.n and self.rng.integers(0, 2):
            g = g @ self.reflection()
        return g

    def twisted(self) -> TwistedElement:
        """The witness of a random A composed with a random group element."""
        S = self.S
        t = witness_global(S, self.lie()).element
        g = TwistedElement(self.group(), 1, False)
        return compose(S, t, g)

    # --- polynomials ------------------------------------------------------

    def polynomial(self, degree: int) -> Poly:
        return poly(self.F, self.F.GF(self.rng.integers(0, self.F.q, size=degree + 1)))


def all_vectors(F: FieldDescriptor, n: int) -> Iterator[FieldArray]:
    for entries in itertools.product(range(F.q), repeat=n):
        yield F.GF(list(entries))


def all_matrices(F: FieldDescriptor, n: int) -> Iterator[FieldArray]:
    for entries in itertools.product(range(F.q), repeat=n * n):
        yield F.GF(list(entries)).reshape(n, n)


def require_kind(S: FormSpace, kind: str) -> None:
    if S.kind != kind:
        raise PreconditionError(f"this check needs a {kind} form, got {S.kind}")
