"""
Three-stage orthogonal decomposition of A in g(V) into simple blocks.

1. separate generalized eigenspaces: f* = ±f stays (type B), f* != ±f pairs
   V_f with V_{f*} and splits into Split blocks;
2. cut every type-B summand into homogeneous pieces, smallest block size first;
3. cut every homogeneous piece into NonSplit blocks or nilpotent pairs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.algebra.poly import Poly, monic_star, poly_at, poly_key, poly_str, x_poly
from clb.blocks.frame import Frame
from clb.blocks.types import (
    EVEN_NILPOTENT_O,
    NON_SPLIT,
    ODD_NILPOTENT_SP,
    SPLIT,
    Decomposition,
    SimpleBlock,
    nilpotent_pair_gram,
)
from clb.errors import InternalCheckError, PreconditionError
from clb.forms.space import FormSpace, first_nonisotropic
from clb.linalg.canonical import generalized_eigenspaces, primary_tops
from clb.linalg.matrix import (
    equal,
    hstack,
    identity,
    inverse,
    is_zero,
    krylov,
    matrix_power,
    solve,
    zeros,
)
from clb.linalg.subspace import Subspace

log = logging.getLogger(__name__)

TYPE_B = "typeB"
SPLIT_PAIR = "split-pair"


@dataclass(frozen=True, eq=False)
class Summand:
    tag: str
    frame: Frame
    f: Poly
    partner: Poly | None = None


# --- stage 1 ----------------------------------------------------------------


def stage1_eigensplit(S: FormSpace, A: FieldArray) -> list[Summand]:
    """Generalized eigenspaces grouped into type-B summands and split pairs V_f + V_{f*}."""
    S.require_lie(A)
    F = S.field
    spaces = generalized_eigenspaces(F, A)
    by_key = {poly_key(es.f): es for es in spaces}
    seen: set[tuple] = set()
    out: list[Summand] = []
    for es in spaces:
        key = poly_key(es.f)
        if key in seen:
            continue
        fs = monic_star(F, es.f)
        if fs == es.f:
            seen.add(key)
            out.append(Summand(TYPE_B, Frame.of(S, A, es.space.columns), es.f))
            continue
        partner = by_key.get(poly_key(fs))
        if partner is None or partner.space.dim != es.space.dim:
            raise InternalCheckError(f"no matching V_(f*) for f = {poly_str(F, es.f)}")
        seen.update({key, poly_key(fs)})
        cols = hstack(F, S.n, [es.space.columns, partner.space.columns])
        out.append(Summand(SPLIT_PAIR, Frame.of(S, A, cols), es.f, partner.f))
    log.debug("stage 1: %s summands", len(out))
    return out


def split_blocks(summand: Summand) -> list[SimpleBlock]:
    """
    V_f is cut into cyclic pieces Z_j by its rational canonical generators;
    the dual basis W_j in V_{f*} completes each piece to a Split block.
    """
    frame = summand.frame
    F = frame.field
    f = summand.f
    k = int(f.degree)
    h = frame.dim // 2
    A1 = frame.op[:h, :h]
    whole = Subspace.whole(F, h)
    tops = primary_tops(F, A1, f, whole)
    pieces = [(krylov(F, A1, v, k * s), s) for v, s in tops]
    Zall = zeros(F, frame.dim, h)
    Zall[:h, :] = hstack(F, h, [Z for Z, _ in pieces])
    Y = zeros(F, frame.dim, h)
    Y[h:, :] = identity(F, h)
    M = frame.pair_matrix(Zall, Y)
    W = Y @ F.conj(inverse(F, M))

    blocks: list[SimpleBlock] = []
    at = 0
    for Z, s in pieces:
        size = Z.shape[1]
        cols = hstack(F, frame.dim, [Zall[:, at:at + size], W[:, at:at + size]])
        sub = frame.sub(cols)
        blocks.append(SimpleBlock(SPLIT, sub.basis, sub.op, sub.gram, f, s))
        at += size
    return blocks


# --- stage 2 ----------------------------------------------------------------


def _kernel_chain(F: FieldDescriptor, fA: FieldArray, dim: int) -> list[Subspace]:
    """[ker f(A)^0, ker f(A)^1, ...] up to the whole space."""
    chain = [Subspace.zero(F, fA.shape[0])]
    P = identity(F, fA.shape[0])
    while chain[-1].dim < dim:
        P = P @ fA
        nxt = Subspace.kernel(F, P)
        if nxt.dim == chain[-1].dim:
            raise PreconditionError("operator is not f-primary on this summand")
        chain.append(nxt)
    return chain


def _smallest_piece(frame: Frame, f: Poly) -> FieldArray:
    F = frame.field
    A = frame.op
    k = int(f.degree)
    fA = poly_at(F, f, A)
    chain = _kernel_chain(F, fA, frame.dim)
    top = len(chain) - 1
    image = Subspace.image(F, fA)
    m = next(i for i in range(1, top + 1) if not image.contains_space(chain[i]))
    covered = chain[min(m + 1, top)].apply(fA)
    lifts: list[FieldArray] = []
    for row in chain[m].rows:
        if covered.contains(row):
            continue
        lifts.append(row)
        covered = covered + Subspace.span(F, frame.dim, krylov(F, A, row, k))
        if covered.dim == chain[m].dim:
            break
    log.debug("stage 2: %s lifts of size %s for f = %s", len(lifts), m, poly_str(F, f))
    return hstack(F, frame.dim, [krylov(F, A, v, k * m) for v in lifts])


def stage2_homogeneous(frame: Frame, f: Poly) -> list[Frame]:
    """Split an f-primary type-B summand into homogeneous orthogonal pieces."""
    F = frame.field
    if monic_star(F, f) != f:
        raise PreconditionError("stage 2 needs f* = ±f")
    out: list[Frame] = []
    current = frame
    while current.dim:
        piece, current = current.split_off(_smallest_piece(current, f))
        out.append(piece)
    return out


def nilpotency(F: FieldDescriptor, A: FieldArray, f: Poly) -> int:
    """Least d with f(A)^d = 0."""
    fA = poly_at(F, f, A)
    P = identity(F, A.shape[0])
    d = 0
    while not is_zero(P):
        P = P @ fA
        d += 1
        if d > A.shape[0]:
            raise PreconditionError("operator is not f-primary")
    return d


def is_homogeneous(frame: Frame, f: Poly) -> bool:
    """f(A)^j V = ker f(A)^{d-j} for every j."""
    F = frame.field
    d = nilpotency(F, frame.op, f)
    fA = poly_at(F, f, frame.op)
    for j in range(d + 1):
        img = Subspace.image(F, matrix_power(F, fA, j))
        ker = Subspace.kernel(F, matrix_power(F, fA, d - j))
        if img != ker:
            return False
    return True


def filtration_laws(frame: Frame, f: Poly) -> bool:
    """V_i^perp = f(A)^i V for 0 <= i <= d, V_i = ker f(A)^i."""
    F = frame.field
    d = nilpotency(F, frame.op, f)
    fA = poly_at(F, f, frame.op)
    for i in range(d + 1):
        Vi = Subspace.kernel(F, matrix_power(F, fA, i))
        perp = Subspace.span(F, frame.dim, frame.complement(Vi.columns))
        if perp != Subspace.image(F, matrix_power(F, fA, i)):
            return False
    return True


def check_filtration_laws(S: FormSpace, A: FieldArray) -> bool:
    return all(filtration_laws(s.frame, s.f) for s in stage1_eigensplit(S, A) if s.tag == TYPE_B)


# --- stage 3 ----------------------------------------------------------------


def is_skew_case(kind: str, f: Poly, d: int, F: FieldDescriptor) -> bool:
    if f != x_poly(F):
        return False
    return (kind == "symmetric" and d % 2 == 0) or (kind == "symplectic" and d % 2 == 1)


def _complement_reps(F: FieldDescriptor, image: Subspace) -> list[FieldArray]:
    """Standard basis vectors completing f(A)V to V, in index order."""
    n = image.ambient
    reps: list[FieldArray] = []
    span = image
    for i in range(n):
        e = F.GF.Zeros(n)
        e[i] = 1
        if span.contains(e):
            continue
        reps.append(e)
        span = span + Subspace.span(F, n, e)
        if span.dim == n:
            break
    return reps


def _induced_gram(frame: Frame, hA: FieldArray, reps: list[FieldArray]) -> FieldArray:
    F = frame.field
    C = hstack(F, frame.dim, [r.reshape(-1, 1) for r in reps])
    return frame.pair_matrix(hA @ C, C)


def _non_split_pieces(frame: Frame, f: Poly, d: int) -> list[SimpleBlock]:
    F = frame.field
    S = frame.space
    k = int(f.degree)
    h = f ** (d - 1)
    if S.kind == "symplectic" and f != x_poly(F):
        h = x_poly(F) * h
    blocks: list[SimpleBlock] = []
    current = frame
    while current.dim:
        A = current.op
        image = Subspace.image(F, poly_at(F, f, A))
        reps = _complement_reps(F, image)
        G = _induced_gram(current, poly_at(F, h, A), reps)
        if F.degree == 2 and not equal(F.conj(G).T, G):
            # skew-hermitian: w * G is hermitian
            G = F.omega * G
        coords = first_nonisotropic(F, G)
        v = hstack(F, current.dim, [r.reshape(-1, 1) for r in reps]) @ coords
        piece, current = current.split_off(krylov(F, A, v, k * d))
        blocks.append(SimpleBlock(NON_SPLIT, piece.basis, piece.op, piece.gram, f, d))
    return blocks


def _correct(frame: Frame, A: FieldArray, v: FieldArray, w: FieldArray, d: int) -> FieldArray:
    """Adjust v by multiples of A^{m-1} w until <A^j v, v> = 0 for every j."""
    while True:
        Apows = [v]
        for _ in range(d):
            Apows.append(A @ Apows[-1])
        bad = next((m for m in range(1, d + 1) if int(frame.pair(Apows[d - m], v))), None)
        if bad is None:
            return v
        m = bad
        c = frame.pair(Apows[d - m], v)
        Aw = matrix_power(frame.field, A, m - 1) @ w
        cross = frame.pair(matrix_power(frame.field, A, d - 1) @ w, v) + frame.pair(Apows[d - m], Aw)
        if int(cross) == 0:
            raise InternalCheckError("lift correction has a vanishing cross term")
        v = v + (-c * cross**-1) * Aw


def _nilpotent_pair_pieces(frame: Frame, d: int) -> list[SimpleBlock]:
    F = frame.field
    S = frame.space
    variant = EVEN_NILPOTENT_O if S.kind == "symmetric" else ODD_NILPOTENT_SP
    target = nilpotent_pair_gram(F, d, S.epsilon)
    x = x_poly(F)
    blocks: list[SimpleBlock] = []
    current = frame
    while current.dim:
        A = current.op
        n = current.dim
        image = Subspace.image(F, A)
        reps = _complement_reps(F, image)
        G = _induced_gram(current, matrix_power(F, A, d - 1), reps)
        a, b = next((i, j) for i in range(G.shape[0]) for j in range(G.shape[1]) if int(G[i, j]))
        v1 = reps[a]
        v2 = reps[b] * G[a, b] ** -1
        v1 = _correct(current, A, v1, v2, d)
        v2 = _correct(current, A, v2, v1, d)

        # e-chain of v1 against the f-side: solve inside V0 = span(A^i v1, A^i v2)
        E = krylov(F, A, v1, d)
        Fc = krylov(F, A, v2, d)
        V0 = hstack(F, n, [E, Fc])
        rows = current.pair_matrix(V0, V0)
        rhs = F.GF.Zeros(2 * d)
        rhs[d - 1] = 1
        z = solve(F, rows, rhs)
        v2t = V0 @ z

        cols = hstack(F, n, [E, krylov(F, A, v2t, d)])
        piece, current = current.split_off(cols)
        if not equal(piece.gram, target):
            raise InternalCheckError("nilpotent pair gram does not match the canonical pattern")
        blocks.append(SimpleBlock(variant, piece.basis, piece.op, piece.gram, x, d))
    return blocks


def stage3_simple(frame: Frame, f: Poly) -> list[SimpleBlock]:
    """Cut a homogeneous type-B piece into simple blocks."""
    F = frame.field
    d = nilpotency(F, frame.op, f)
    if is_skew_case(frame.space.kind, f, d, F):
        return _nilpotent_pair_pieces(frame, d)
    return _non_split_pieces(frame, f, d)


# --- pipeline ---------------------------------------------------------------


def classify(S: FormSpace, A: FieldArray) -> Decomposition:
    S.require_lie(A)
    F = S.field
    if S.n == 0:
        return Decomposition(S, A, [], identity(F, 0))
    blocks: list[SimpleBlock] = []
    for summand in stage1_eigensplit(S, A):
        if summand.tag == SPLIT_PAIR:
            blocks.extend(split_blocks(summand))
            continue
        for piece in stage2_homogeneous(summand.frame, summand.f):
            blocks.extend(stage3_simple(piece, summand.f))
    Q = hstack(F, S.n, [b.basis for b in blocks])
    decomposition = Decomposition(S, A, blocks, inverse(F, Q))
    problems = decomposition.problems()
    if problems:
        raise InternalCheckError("; ".join(problems))
    log.info("classified %sx%s operator into %s blocks", S.n, S.n, len(blocks))
    return decomposition
