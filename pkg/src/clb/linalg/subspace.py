from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.errors import ShapeError
from clb.linalg.matrix import ints, kernel_basis, rref, zeros


@dataclass(frozen=True, eq=False)
class Subspace:
    """
    A subspace of F^n kept as the nonzero rows of a reduced echelon form,
    so equality is a direct comparison of bases.
    """

    field: FieldDescriptor
    ambient: int
    rows: FieldArray

    @staticmethod
    def span(F: FieldDescriptor, n: int, columns: FieldArray) -> "Subspace":
        if columns.ndim == 1:
            columns = columns.reshape(-1, 1)
        if columns.shape[0] != n:
            raise ShapeError(f"vectors of length {columns.shape[0]} in F^{n}")
        R, pivots = rref(columns.T)
        return Subspace(F, n, R[: len(pivots)] if pivots else zeros(F, 0, n))

    @staticmethod
    def zero(F: FieldDescriptor, n: int) -> "Subspace":
        return Subspace(F, n, zeros(F, 0, n))

    @staticmethod
    def whole(F: FieldDescriptor, n: int) -> "Subspace":
        return Subspace(F, n, F.GF.Identity(n))

    @staticmethod
    def kernel(F: FieldDescriptor, A: FieldArray) -> "Subspace":
        return Subspace.span(F, A.shape[1], kernel_basis(F, A))

    @staticmethod
    def image(F: FieldDescriptor, A: FieldArray) -> "Subspace":
        return Subspace.span(F, A.shape[0], A)

    @property
    def dim(self) -> int:
        return int(self.rows.shape[0])

    @property
    def columns(self) -> FieldArray:
        return self.rows.T

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.rows.shape == other.rows.shape
            and np.array_equal(ints(self.rows), ints(other.rows))
        )

    def __hash__(self) -> int:
        return hash((self.ambient, tuple(ints(self.rows).reshape(-1).tolist())))

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient, np.hstack([self.columns, other.columns]))

    def contains(self, v: FieldArray) -> bool:
        if v.ndim == 1:
            v = v.reshape(-1, 1)
        return (self + Subspace.span(self.field, self.ambient, v)).dim == self.dim

    def contains_space(self, other: "Subspace") -> bool:
        return (self + other).dim == self.dim

    def intersect(self, other: "Subspace") -> "Subspace":
        if not self.dim or not other.dim:
            return Subspace.zero(self.field, self.ambient)
        K = kernel_basis(self.field, np.hstack([self.columns, -other.columns]))
        return Subspace.span(self.field, self.ambient, self.columns @ K[: self.dim])

    def apply(self, A: FieldArray) -> "Subspace":
        return Subspace.span(self.field, A.shape[0], A @ self.columns)

    def is_invariant(self, A: FieldArray) -> bool:
        return self.contains_space(self.apply(A))
