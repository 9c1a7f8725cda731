from __future__ import annotations

from dataclasses import dataclass

from clb.algebra.field import FieldArray
from clb.errors import InternalCheckError
from clb.forms.space import FormSpace
from clb.linalg.matrix import express, hstack, identity, kernel_basis, rank


@dataclass(frozen=True, eq=False)
class Frame:
    """
    An A-invariant subspace of (V, B) in local coordinates.

    `basis` maps local coordinates to ambient ones; `op` and `gram` are the
    restricted operator and Gram in those coordinates.
    """

    space: FormSpace
    basis: FieldArray
    op: FieldArray
    gram: FieldArray

    @staticmethod
    def whole(S: FormSpace, A: FieldArray) -> "Frame":
        return Frame(S, identity(S.field, S.n), A, S.gram)

    @staticmethod
    def of(S: FormSpace, A: FieldArray, basis: FieldArray) -> "Frame":
        op = express(S.field, basis, A @ basis)
        return Frame(S, basis, op, S.restrict(basis))

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    @property
    def field(self):
        return self.space.field

    def pair(self, x: FieldArray, y: FieldArray) -> FieldArray:
        return x @ self.gram @ self.field.conj(y)

    def pair_matrix(self, X: FieldArray, Y: FieldArray) -> FieldArray:
        return X.T @ self.gram @ self.field.conj(Y)

    def ambient(self, local: FieldArray) -> FieldArray:
        return self.basis @ local

    def sub(self, local_cols: FieldArray) -> "Frame":
        F = self.field
        op = express(F, local_cols, self.op @ local_cols)
        return Frame(self.space, self.basis @ local_cols, op, self.pair_matrix(local_cols, local_cols))

    def complement(self, local_cols: FieldArray) -> FieldArray:
        """Local columns spanning the orthogonal complement of span(local_cols)."""
        F = self.field
        if local_cols.shape[1] == 0:
            return identity(F, self.dim)
        return kernel_basis(F, (self.gram @ F.conj(local_cols)).T)

    def split_off(self, local_cols: FieldArray) -> tuple["Frame", "Frame"]:
        """(U, U^perp) for a non-degenerate A-invariant span U."""
        F = self.field
        rest = self.complement(local_cols)
        if rest.shape[1] + local_cols.shape[1] != self.dim or rank(hstack(F, self.dim, [local_cols, rest])) != self.dim:
            raise InternalCheckError("summand is degenerate: complement is not a direct complement")
        return self.sub(local_cols), self.sub(rest)
