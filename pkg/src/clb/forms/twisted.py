"""
Twisted elements of the extended group G~ = G x {+1, -1}.

An element is stored as (M, delta, conjugate) acting on V by x -> M sigma(x),
where sigma is coordinatewise conjugation when `conjugate` is set. Over a
degree-2 field the delta = -1 coset is semilinear; over F_p everything is linear.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.errors import InputError, PreconditionError, ShapeError
from clb.forms.space import FormSpace, orthogonal_basis
from clb.linalg.matrix import det, diag, equal, identity, inverse


@dataclass(frozen=True, eq=False)
class TwistedElement:
    matrix: FieldArray
    delta: int
    conjugate: bool = False

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwistedElement):
            return NotImplemented
        return (
            self.delta == other.delta
            and self.conjugate == other.conjugate
            and equal(self.matrix, other.matrix)
        )

    __hash__ = None  # type: ignore[assignment]

    def to_json(self, F: FieldDescriptor) -> dict[str, Any]:
        return {"matrix": F.encode(self.matrix), "delta": self.delta, "conjugate": self.conjugate}

    @staticmethod
    def from_json(F: FieldDescriptor, data: dict[str, Any]) -> "TwistedElement":
        M = F.array(data["matrix"], 2)
        delta = int(data["delta"])
        return TwistedElement(M, delta, bool(data.get("conjugate", delta == -1 and F.degree == 2)))


def twisted(S: FormSpace, M: FieldArray, delta: int) -> TwistedElement:
    """The element (M, delta) with the semilinearity fixed by the space."""
    if delta not in (1, -1):
        raise InputError(f"delta must be +1 or -1, got {delta}")
    if M.shape != (S.n, S.n):
        raise ShapeError(f"twisted matrix must be {S.n}x{S.n}")
    return TwistedElement(M, delta, delta == -1 and S.field.degree == 2)


def identity_element(S: FormSpace) -> TwistedElement:
    return TwistedElement(identity(S.field, S.n), 1, False)


def _semi(F: FieldDescriptor, t: TwistedElement, X: FieldArray) -> FieldArray:
    return F.conj(X) if t.conjugate else X


def chi(t: TwistedElement) -> int:
    return t.delta


def in_twisted(S: FormSpace, t: TwistedElement) -> bool:
    """
    M^T B conj(M) = B for delta = 1 and = B^T for delta = -1;
    on SO additionally det M = delta^{floor((n+1)/2)}.
    """
    if t.delta not in (1, -1) or t.matrix.shape != (S.n, S.n):
        return False
    if t.conjugate != (t.delta == -1 and S.field.degree == 2):
        return False
    F = S.field
    M = t.matrix
    target = S.gram if t.delta == 1 else S.gram.T
    if not equal(M.T @ S.gram @ F.conj(M), target):
        return False
    if S.group == "SO":
        expected = 1 if t.delta == 1 else (-1) ** ((S.n + 1) // 2)
        return int(det(F, M)) == int(F.scalar(expected))
    return True


def apply_vector(S: FormSpace, t: TwistedElement, v: FieldArray) -> FieldArray:
    w = t.matrix @ _semi(S.field, t, v)
    return w if t.delta == 1 else -w


def apply_algebra(S: FormSpace, t: TwistedElement, A: FieldArray) -> FieldArray:
    X = t.matrix @ _semi(S.field, t, A) @ inverse(S.field, t.matrix)
    return X if t.delta == 1 else -X


def apply_group(S: FormSpace, t: TwistedElement, g: FieldArray) -> FieldArray:
    h = g if t.delta == 1 else inverse(S.field, g)
    return t.matrix @ _semi(S.field, t, h) @ inverse(S.field, t.matrix)


def compose(S: FormSpace, t1: TwistedElement, t2: TwistedElement) -> TwistedElement:
    """t1 after t2."""
    M = t1.matrix @ _semi(S.field, t1, t2.matrix)
    return TwistedElement(M, t1.delta * t2.delta, t1.conjugate != t2.conjugate)


def invert(S: FormSpace, t: TwistedElement) -> TwistedElement:
    Minv = inverse(S.field, t.matrix)
    return TwistedElement(_semi(S.field, t, Minv), t.delta, t.conjugate)


def sigma_builder(S: FormSpace) -> TwistedElement:
    """
    A delta = -1 element of G~(V):
      O  -> (I, -1)
      SO -> Q D Q^{-1}, D = diag with floor((n+1)/2) entries -1, Q an orthogonal basis
      U  -> coordinatewise conjugation in an orthogonal basis
    """
    F = S.field
    if S.group == "Sp":
        raise PreconditionError("sigma_builder supports O, SO and U only")
    if S.group == "O":
        return TwistedElement(identity(F, S.n), -1, False)
    Q = orthogonal_basis(S)
    if S.group == "SO":
        k = (S.n + 1) // 2
        D = diag(F, [-1] * k + [1] * (S.n - k))
        return TwistedElement(Q @ D @ inverse(F, Q), -1, False)
    return TwistedElement(Q @ inverse(F, F.conj(Q)), -1, True)
