"""
Construct (T, -1) in the twisted group with (T, -1).A = A.

Block recipes, in each block's own basis:
  Split             T = [[0, X], [(X^H)^{-1}, 0]] with X A'^T X^{-1} = A'
  NonSplit          T(A^i v) = (-1)^i A^i v  (semilinear over F_{p^2})
  nilpotent pairs   T(A^i e) = (-1)^i A^i e,  T(A^i f) = (-1)^{i+1} A^i f
The direct sum is moved to ambient coordinates as M = Q T sigma(Q)^{-1}.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.blocks.stages import classify
from clb.blocks.types import NILPOTENT_PAIRS, NON_SPLIT, SPLIT, Decomposition, SimpleBlock
from clb.errors import InternalCheckError
from clb.forms.space import FormSpace
from clb.forms.twisted import TwistedElement, apply_algebra
from clb.linalg.canonical import similarity_witness
from clb.linalg.matrix import block_diag, det, diag, equal, inverse, zeros

log = logging.getLogger(__name__)


@dataclass
class BlockWitness:
    index: int
    variant: str
    matrix: FieldArray
    det: int


@dataclass
class WitnessReport:
    element: TwistedElement
    per_block: list[BlockWitness] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self, F: FieldDescriptor) -> dict[str, Any]:
        return {
            "element": self.element.to_json(F),
            "per_block": [
                {"index": b.index, "variant": b.variant, "matrix": F.encode(b.matrix), "det": b.det}
                for b in self.per_block
            ],
            "checks": dict(self.checks),
        }


def _signed_int(F: FieldDescriptor, x: FieldArray) -> int:
    v = int(x)
    return -1 if v == int(-F.one()) else v


def witness_block(S: FormSpace, b: SimpleBlock) -> FieldArray:
    """T_b in the block basis: T A_b T^{-1} = -A_b and T_b^T G_b sigma(T_b) = G_b^T."""
    F = S.field
    if b.variant == NON_SPLIT:
        return diag(F, [(-1) ** i for i in range(b.dim)])
    if b.variant in NILPOTENT_PAIRS:
        d = b.d
        return diag(F, [(-1) ** i for i in range(d)] + [(-1) ** (i + 1) for i in range(d)])
    if b.variant == SPLIT:
        h = b.half
        A1 = b.operator[:h, :h]
        X = similarity_witness(F, A1.T, A1)
        if X is None:
            raise InternalCheckError("A' is not similar to its transpose")
        Y = inverse(F, F.conj(X).T)
        T = zeros(F, b.dim, b.dim)
        T[:h, h:] = X
        T[h:, :h] = Y
        return T
    raise InternalCheckError(f"unknown block variant {b.variant!r}")


def _twisting_law(S: FormSpace, M: FieldArray) -> bool:
    return equal(M.T @ S.gram @ S.field.conj(M), S.gram.T)


def witness_global(S: FormSpace, A: FieldArray, decomposition: Decomposition | None = None) -> WitnessReport:
    F = S.field
    D = decomposition if decomposition is not None else classify(S, A)
    local = [witness_block(S, b) for b in D.blocks]

    expected_det = None
    if S.group == "SO":
        expected_det = F.scalar((-1) ** ((S.n + 1) // 2))
        if int(det(F, block_diag(F, local))) != int(expected_det):
            odd = next((i for i, b in enumerate(D.blocks) if b.dim % 2), None)
            if odd is None:
                raise InternalCheckError("no odd-dimensional block to fix the determinant")
            local[odd] = -local[odd]

    conjugate = F.degree == 2
    Q = D.basis
    sQ = F.conj(Q) if conjugate else Q
    M = Q @ block_diag(F, local) @ inverse(F, sQ)
    element = TwistedElement(M, -1, conjugate)

    report = WitnessReport(element=element)
    for i, (b, T) in enumerate(zip(D.blocks, local)):
        report.per_block.append(BlockWitness(i, b.variant, T, _signed_int(F, det(F, T))))
    report.checks["anti_commutes"] = equal(apply_algebra(S, element, A), A)
    report.checks["twisting_law"] = _twisting_law(S, M)
    report.checks["determinant"] = expected_det is None or int(det(F, M)) == int(expected_det)
    if not report.ok:
        raise InternalCheckError(f"witness failed its checks: {report.checks}")
    log.debug("witness built from %s blocks", len(local))
    return report
