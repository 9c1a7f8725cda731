from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterator, Literal

import numpy as np

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.errors import InputError, MembershipError, PreconditionError, ShapeError
from clb.linalg.matrix import (
    det,
    diag,
    equal,
    identity,
    inverse,
    is_zero,
    kernel_basis,
    outer,
    require_square,
    zeros,
)
from clb.linalg.subspace import Subspace

log = logging.getLogger(__name__)

Kind = Literal["symmetric", "hermitian", "symplectic"]
GroupKind = Literal["O", "SO", "U", "Sp"]

GROUPS_BY_KIND: dict[str, tuple[str, ...]] = {
    "symmetric": ("O", "SO"),
    "hermitian": ("U",),
    "symplectic": ("Sp",),
}
KIND_BY_GROUP = {"O": "symmetric", "SO": "symmetric", "U": "hermitian", "Sp": "symplectic"}
# CLI spelling of the Lie algebra families
GROUP_BY_ALGEBRA = {"o": "O", "so": "SO", "u": "U", "sp": "Sp"}


@dataclass(frozen=True, eq=False)
class FormSpace:
    """A non-degenerate symmetric / hermitian / symplectic form <u, v> = u^T B conj(v)."""

    field: FieldDescriptor
    kind: str
    gram: FieldArray
    group: str

    def __post_init__(self) -> None:
        F = self.field
        if self.kind not in GROUPS_BY_KIND:
            raise InputError(f"unknown form kind {self.kind!r}")
        if self.group not in GROUPS_BY_KIND[self.kind]:
            raise InputError(f"group {self.group!r} does not match a {self.kind} form")
        require_square(self.gram)
        if self.kind == "hermitian" and F.degree != 2:
            raise InputError("hermitian forms need a degree-2 field")
        if self.kind != "hermitian" and F.degree != 1:
            raise InputError(f"{self.kind} forms need a degree-1 field")
        B = self.gram
        if self.kind == "symmetric" and not equal(B.T, B):
            raise InputError("gram is not symmetric")
        if self.kind == "hermitian" and not equal(F.conj(B).T, B):
            raise InputError("gram is not hermitian")
        if self.kind == "symplectic" and not equal(B.T, -B):
            raise InputError("gram is not alternating")
        if self.n and int(det(F, B)) == 0:
            raise InputError("gram is degenerate")

    @property
    def n(self) -> int:
        return int(self.gram.shape[0])

    @property
    def epsilon(self) -> int:
        """<v, u> = epsilon * conj(<u, v>)."""
        return -1 if self.kind == "symplectic" else 1

    @property
    def algebra(self) -> str:
        return {"O": "o", "SO": "o", "U": "u", "Sp": "sp"}[self.group]

    @cached_property
    def gram_inv(self) -> FieldArray:
        return inverse(self.field, self.gram)

    # --- evaluation ---------------------------------------------------------

    def pair(self, u: FieldArray, v: FieldArray) -> FieldArray:
        if u.shape != (self.n,) or v.shape != (self.n,):
            raise ShapeError(f"vectors must have length {self.n}")
        return u @ self.gram @ self.field.conj(v)

    def pair_matrix(self, U: FieldArray, W: FieldArray) -> FieldArray:
        """Entry (i, j) = <U[:, i], W[:, j]>."""
        return U.T @ self.gram @ self.field.conj(W)

    def restrict(self, cols: FieldArray) -> FieldArray:
        return self.pair_matrix(cols, cols)

    def adjoint(self, A: FieldArray) -> FieldArray:
        """A* with <Au, v> = <u, A* v>: A* = conj(B^{-1} A^T B)."""
        if A.shape != (self.n, self.n):
            raise ShapeError(f"operator must be {self.n}x{self.n}")
        return self.field.conj(self.gram_inv @ A.T @ self.gram)

    def in_lie_algebra(self, A: FieldArray) -> bool:
        return equal(self.adjoint(A), -A)

    def in_group(self, g: FieldArray) -> bool:
        if g.shape != (self.n, self.n):
            return False
        if not equal(self.adjoint(g) @ g, identity(self.field, self.n)):
            return False
        if self.group == "SO":
            return int(det(self.field, g)) == 1
        return True

    def require_lie(self, A: FieldArray) -> None:
        if not self.in_lie_algebra(A):
            raise MembershipError("operator fails A* = −A")

    # --- derived spaces ----------------------------------------------------

    def subspace(self, cols: FieldArray) -> "FormSpace":
        return FormSpace(self.field, self.kind, self.restrict(cols), self.group)

    def with_group(self, group: str) -> "FormSpace":
        return FormSpace(self.field, self.kind, self.gram, group)

    @cached_property
    def lie_basis(self) -> list[FieldArray]:
        """An F_p-basis of g(V) (u is only F_p-linear, so the basis is over the prime field)."""
        F = self.field
        P = FieldDescriptor(F.p, 1)
        n = self.n
        D = F.degree * n * n
        images = zeros(P, D, D)
        units = [F.one()] if F.degree == 1 else [F.one(), F.omega]
        col = 0
        for i in range(n):
            for j in range(n):
                for c in units:
                    E = zeros(F, n, n)
                    E[i, j] = c
                    images[:, col] = F.to_prime(E + self.adjoint(E))
                    col += 1
        K = kernel_basis(P, images)
        basis = []
        for t in range(K.shape[1]):
            # prime coordinates are ordered entry-major, component-minor, as in to_prime
            basis.append(F.from_prime(K[:, t], (n, n)))
        return basis

    def lie_elements(self) -> Iterator[FieldArray]:
        """All of g(V), in lexicographic order of F_p-coordinates on `lie_basis`."""
        basis = self.lie_basis
        p = self.field.p
        total = p ** len(basis)
        for idx in range(total):
            coeffs = []
            r = idx
            for _ in basis:
                coeffs.append(r % p)
                r //= p
            A = zeros(self.field, self.n, self.n)
            for c, X in zip(reversed(coeffs), basis):
                if c:
                    A = A + c * X
            yield A

    def to_json(self) -> dict[str, Any]:
        return {
            "field": self.field.to_json(),
            "kind": self.kind,
            "group": self.group,
            "gram": self.field.encode(self.gram),
        }

    @staticmethod
    def from_json(data: dict[str, Any]) -> "FormSpace":
        F = FieldDescriptor.from_json(data["field"])
        gram = F.array(data["gram"], 2)
        return FormSpace(F, str(data["kind"]), gram, str(data["group"]))


# --- phi maps ---------------------------------------------------------------


def phi(S: FormSpace, v: FieldArray) -> FieldArray:
    """u -> <u, v> v."""
    return outer(v, S.gram @ S.field.conj(v))


def phi2(S: FormSpace, u: FieldArray, w: FieldArray) -> FieldArray:
    """v -> <v, w> u."""
    return outer(u, S.gram @ S.field.conj(w))


# --- non-isotropic search ---------------------------------------------------


def _candidates(F: FieldDescriptor, k: int) -> Iterator[FieldArray]:
    for i in range(k):
        e = F.GF.Zeros(k)
        e[i] = 1
        yield e
    for i in range(k):
        for j in range(i + 1, k):
            e = F.GF.Zeros(k)
            e[i] = 1
            e[j] = 1
            yield e
    if F.degree == 2:
        for i in range(k):
            for j in range(i + 1, k):
                e = F.GF.Zeros(k)
                e[i] = 1
                e[j] = F.omega
                yield e


def first_nonisotropic(F: FieldDescriptor, gram: FieldArray) -> FieldArray:
    """
    Coordinates x with x^T G conj(x) != 0: e_i, then e_i + e_j, then e_i + w e_j.
    Polarization guarantees a hit for any nonzero hermitian or symmetric G.
    """
    for x in _candidates(F, gram.shape[0]):
        if int(x @ gram @ F.conj(x)):
            return x
    if is_zero(gram):
        raise PreconditionError("zero form")
    raise PreconditionError("all vectors isotropic")


def nonisotropic_vector(S: FormSpace, subspace: Subspace | None = None) -> FieldArray:
    if S.kind == "symplectic":
        raise PreconditionError("all vectors isotropic")
    cols = identity(S.field, S.n) if subspace is None else subspace.columns
    G = S.restrict(cols)
    if is_zero(G):
        raise PreconditionError("zero form")
    return cols @ first_nonisotropic(S.field, G)


def orthogonal_complement(S: FormSpace, cols: FieldArray, within: FieldArray | None = None) -> FieldArray:
    """Columns spanning {x in span(within) : <x, c> = 0 for every column c}."""
    F = S.field
    within = identity(F, S.n) if within is None else within
    if cols.shape[1] == 0:
        return within
    rows = (within.T @ S.gram @ F.conj(cols)).T
    return within @ kernel_basis(F, rows)


def orthogonal_basis(S: FormSpace) -> FieldArray:
    """Columns in which the (symmetric or hermitian) Gram becomes diagonal."""
    if S.kind == "symplectic":
        raise PreconditionError("all vectors isotropic")
    F = S.field
    current = identity(F, S.n)
    out = zeros(F, S.n, 0)
    while current.shape[1]:
        v = current @ first_nonisotropic(F, S.restrict(current))
        out = np.hstack([out, v.reshape(-1, 1)])
        current = orthogonal_complement(S, v.reshape(-1, 1), current)
    return out


def symplectic_basis(S: FormSpace) -> FieldArray:
    """Columns e_1, f_1, e_2, f_2, ... with <e_i, f_i> = 1 and all other pairings 0."""
    if S.kind != "symplectic":
        raise PreconditionError("symplectic basis needs a symplectic form")
    F = S.field
    current = identity(F, S.n)
    out = zeros(F, S.n, 0)
    while current.shape[1]:
        G = S.restrict(current)
        raw = np.asarray(G.view(np.ndarray))
        a, b = (int(t) for t in np.argwhere(raw)[0])
        e = current[:, a]
        f = current[:, b] * G[a, b] ** -1
        pair_cols = _two_columns(F, e, f)
        out = np.hstack([out, pair_cols])
        current = orthogonal_complement(S, pair_cols, current)
    return out


def _two_columns(F: FieldDescriptor, u: FieldArray, w: FieldArray) -> FieldArray:
    out = zeros(F, u.shape[0], 2)
    out[:, 0] = u
    out[:, 1] = w
    return out


def standard_gram(F: FieldDescriptor, kind: str, n: int) -> FieldArray:
    if kind == "symmetric":
        return diag(F, [1 if i % 2 == 0 else -1 for i in range(n)])
    if kind == "hermitian":
        return identity(F, n)
    if kind == "symplectic":
        if n % 2:
            raise InputError("symplectic spaces have even dimension")
        B = zeros(F, n, n)
        for i in range(0, n, 2):
            B[i, i + 1] = F.scalar(1)
            B[i + 1, i] = F.scalar(-1)
        return B
    raise InputError(f"unknown form kind {kind!r}")


def standard_space(F: FieldDescriptor, group: str, n: int) -> FormSpace:
    """diag(1, -1, 1, ...) for O/SO, identity for U, J + ... + J for Sp."""
    if group not in KIND_BY_GROUP:
        raise InputError(f"unknown group {group!r}")
    kind = KIND_BY_GROUP[group]
    return FormSpace(F, kind, standard_gram(F, kind, n), group)
