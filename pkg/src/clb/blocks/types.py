from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Any

import galois

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.algebra.poly import Poly, monic_star, poly_key, poly_str, poly_to_json, x_poly
from clb.forms.space import FormSpace
from clb.linalg.canonical import char_poly, is_minimal_regular, min_poly
from clb.linalg.matrix import block_diag, det, equal, hstack, inverse, is_zero, krylov, zeros

SPLIT = "Split"
NON_SPLIT = "NonSplit"
EVEN_NILPOTENT_O = "EvenNilpotentO"
ODD_NILPOTENT_SP = "OddNilpotentSp"
VARIANTS = (SPLIT, NON_SPLIT, EVEN_NILPOTENT_O, ODD_NILPOTENT_SP)
NILPOTENT_PAIRS = (EVEN_NILPOTENT_O, ODD_NILPOTENT_SP)


@dataclass(frozen=True, eq=False)
class SimpleBlock:
    """
    One orthogonal summand. `basis` holds ambient columns; `operator` and `gram`
    are A and B written in that basis (A @ basis = basis @ operator).

    Split blocks list V' first and V'* second; nilpotent pairs list the e-chain
    then the f-chain.
    """

    variant: str
    basis: FieldArray
    operator: FieldArray
    gram: FieldArray
    f: Poly
    d: int

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    @property
    def half(self) -> int:
        return self.dim // 2

    def to_json(self, F: FieldDescriptor) -> dict[str, Any]:
        return {
            "variant": self.variant,
            "f": poly_to_json(F, self.f),
            "f_str": poly_str(F, self.f),
            "d": self.d,
            "dim": self.dim,
            "basis": F.encode(self.basis),
            "operator": F.encode(self.operator),
            "gram": F.encode(self.gram),
        }


def nilpotent_pair_gram(F: FieldDescriptor, d: int, epsilon: int) -> FieldArray:
    """<A^i e, A^j f> = (-1)^j when i + j = d - 1; e-e and f-f pairings vanish."""
    G = zeros(F, 2 * d, 2 * d)
    for i in range(d):
        j = d - 1 - i
        G[i, d + j] = F.scalar((-1) ** j)
        G[d + j, i] = F.scalar(epsilon * (-1) ** j)
    return G


def block_problems(S: FormSpace, A: FieldArray, b: SimpleBlock) -> list[str]:
    """Everything wrong with `b` as a simple block of A on S (empty list = valid)."""
    F = S.field
    out: list[str] = []
    if b.variant not in VARIANTS:
        return [f"unknown variant {b.variant!r}"]
    if not equal(A @ b.basis, b.basis @ b.operator):
        out.append("basis does not carry the restricted operator")
    if not equal(S.restrict(b.basis), b.gram):
        out.append("restricted gram mismatch")
    if int(det(F, b.gram)) == 0:
        out.append("restricted form is degenerate")
    x = x_poly(F)
    starred_to_self = monic_star(F, b.f) == b.f
    k = int(b.f.degree)

    if b.variant == SPLIT:
        h = b.half
        if b.dim % 2 or h != k * b.d:
            return out + ["split block has the wrong size"]
        if not is_zero(b.gram[:h, :h]) or not is_zero(b.gram[h:, h:]):
            out.append("V' or V'* is not isotropic")
        if not is_zero(b.operator[:h, h:]) or not is_zero(b.operator[h:, :h]):
            out.append("operator does not preserve V' and V'*")
        A1, A2 = b.operator[:h, :h], b.operator[h:, h:]
        X = b.gram[:h, h:]
        if not equal(A1.T @ X, -(X @ F.conj(A2))):
            out.append("<A'u, v> != <u, -A''v>")
        if not is_minimal_regular(F, A1) or char_poly(F, A1) != b.f**b.d:
            out.append("A' is not minimal regular with char poly f^d")
        if starred_to_self:
            out.append("split block with f* = ±f")
        return out

    if b.variant == NON_SPLIT:
        if b.dim != k * b.d:
            return out + ["non-split block has the wrong size"]
        if not is_minimal_regular(F, b.operator) or char_poly(F, b.operator) != b.f**b.d:
            out.append("operator is not minimal regular with char poly f^d")
        if not starred_to_self:
            out.append("non-split block with f* != ±f")
        if b.f == x and S.kind == "symmetric" and b.d % 2 == 0:
            out.append("x^d with d even cannot be non-split in o")
        if b.f == x and S.kind == "symplectic" and b.d % 2 == 1:
            out.append("x^d with d odd cannot be non-split in sp")
        return out

    expected_kind = "symmetric" if b.variant == EVEN_NILPOTENT_O else "symplectic"
    parity = 0 if b.variant == EVEN_NILPOTENT_O else 1
    d = b.d
    if S.kind != expected_kind or d % 2 != parity or b.f != x:
        out.append(f"{b.variant} needs a {expected_kind} form, f = x and d of parity {parity}")
    if b.dim != 2 * d:
        return out + ["nilpotent pair has the wrong size"]
    if min_poly(F, b.operator) != x**d:
        out.append("min poly is not x^d")
    shift = zeros(F, d, d)
    for i in range(d - 1):
        shift[i + 1, i] = 1
    if not equal(b.operator, block_diag(F, [shift, shift])):
        out.append("basis is not e, Ae, ..., f, Af, ...")
    if not equal(b.gram, nilpotent_pair_gram(F, d, S.epsilon)):
        out.append("gram does not match the nilpotent pair pattern")
    return out


@dataclass(frozen=True, eq=False)
class Decomposition:
    """V = orthogonal sum of blocks; `change_of_basis` P = Q^{-1} with Q the stacked block bases."""

    space: FormSpace
    operator: FieldArray
    blocks: list[SimpleBlock]
    change_of_basis: FieldArray

    @property
    def basis(self) -> FieldArray:
        return hstack(self.space.field, self.space.n, [b.basis for b in self.blocks])

    def block_operator(self) -> FieldArray:
        return block_diag(self.space.field, [b.operator for b in self.blocks])

    def block_gram(self) -> FieldArray:
        return block_diag(self.space.field, [b.gram for b in self.blocks])

    def reassemble(self) -> tuple[FieldArray, FieldArray]:
        """(A, B) rebuilt from the blocks alone."""
        F = self.space.field
        P = self.change_of_basis
        Q = inverse(F, P)
        A = Q @ self.block_operator() @ P
        B = P.T @ self.block_gram() @ F.conj(P)
        return A, B

    def problems(self) -> list[str]:
        S = self.space
        out: list[str] = []
        for i, b in enumerate(self.blocks):
            out.extend(f"block {i}: {msg}" for msg in block_problems(S, self.operator, b))
        for i, b1 in enumerate(self.blocks):
            for j in range(i + 1, len(self.blocks)):
                if not is_zero(S.pair_matrix(b1.basis, self.blocks[j].basis)):
                    out.append(f"blocks {i} and {j} are not orthogonal")
        if sum(b.dim for b in self.blocks) != S.n:
            return out + ["block dimensions do not add up"]
        A, B = self.reassemble()
        if not equal(A, self.operator) or not equal(B, S.gram):
            out.append("reassembly does not reproduce (A, B)")
        return out

    def signature(self) -> list[dict[str, Any]]:
        return block_signature(self.space, self.blocks)

    def to_json(self) -> dict[str, Any]:
        F = self.space.field
        return {
            "blocks": [b.to_json(F) for b in self.blocks],
            "change_of_basis": F.encode(self.change_of_basis),
            "signature": self.signature(),
        }


def _square_class(F: FieldDescriptor, x: FieldArray) -> int:
    return 1 if galois.legendre_symbol(int(x), F.p) == 1 else -1


def block_signature(S: FormSpace, blocks: list[SimpleBlock]) -> list[dict[str, Any]]:
    """
    Conjugation invariant of a decomposition: (variant, f, d, count) per group, and
    for symmetric forms the square class of det of the group's summed Gram.
    """
    F = S.field
    groups: dict[tuple[Any, ...], list[SimpleBlock]] = defaultdict(list)
    for b in blocks:
        groups[(b.variant, poly_key(b.f), b.d)].append(b)
    out = []
    for (variant, fkey, d), members in sorted(groups.items()):
        entry: dict[str, Any] = {
            "variant": variant,
            "f": poly_to_json(F, members[0].f),
            "d": d,
            "count": len(members),
        }
        if S.kind == "symmetric":
            g = block_diag(F, [b.gram for b in members])
            entry["discriminant"] = _square_class(F, det(F, g))
        out.append(entry)
    return out


def nilpotent_chain_basis(F: FieldDescriptor, A: FieldArray, e: FieldArray, f: FieldArray, d: int) -> FieldArray:
    return hstack(F, A.shape[0], [krylov(F, A, e, d), krylov(F, A, f, d)])
