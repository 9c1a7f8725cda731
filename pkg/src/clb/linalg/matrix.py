from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.errors import InconsistentSystemError, PreconditionError, ShapeError


def identity(F: FieldDescriptor, n: int) -> FieldArray:
    return F.GF.Identity(n)


def zeros(F: FieldDescriptor, rows: int, cols: int) -> FieldArray:
    return F.GF.Zeros((rows, cols))


def diag(F: FieldDescriptor, entries: Sequence[int | FieldArray]) -> FieldArray:
    n = len(entries)
    out = zeros(F, n, n)
    for i, e in enumerate(entries):
        out[i, i] = e if isinstance(e, F.GF) else F.scalar(int(e))
    return out


def block_diag(F: FieldDescriptor, blocks: Sequence[FieldArray]) -> FieldArray:
    n = sum(b.shape[0] for b in blocks)
    out = zeros(F, n, n)
    at = 0
    for b in blocks:
        k = b.shape[0]
        out[at:at + k, at:at + k] = b
        at += k
    return out


def require_square(A: FieldArray) -> int:
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {A.shape}")
    return int(A.shape[0])


def conj_t(F: FieldDescriptor, A: FieldArray) -> FieldArray:
    """Conjugate transpose (plain transpose in degree 1)."""
    return F.conj(A).T


def ints(A: FieldArray) -> np.ndarray:
    return np.asarray(A.view(np.ndarray), dtype=np.int64)


def key(A: FieldArray) -> tuple[int, ...]:
    return tuple(int(x) for x in ints(A).reshape(-1))


def is_zero(A: FieldArray) -> bool:
    return not np.any(ints(A))


def equal(A: FieldArray, B: FieldArray) -> bool:
    return A.shape == B.shape and np.array_equal(ints(A), ints(B))


def outer(u: FieldArray, w: FieldArray) -> FieldArray:
    return u[:, None] * w[None, :]


def rref(A: FieldArray) -> tuple[FieldArray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    if A.shape[0] == 0 or A.shape[1] == 0:
        return A.copy(), []
    R = A.row_reduce()
    raw = ints(R)
    pivots: list[int] = []
    for r in range(raw.shape[0]):
        nz = np.flatnonzero(raw[r])
        if nz.size == 0:
            break
        pivots.append(int(nz[0]))
    return R, pivots


def rank(A: FieldArray) -> int:
    return len(rref(A)[1])


def det(F: FieldDescriptor, A: FieldArray) -> FieldArray:
    n = require_square(A)
    if n == 0:
        return F.one()
    return np.linalg.det(A)


def inverse(F: FieldDescriptor, A: FieldArray) -> FieldArray:
    n = require_square(A)
    if n == 0:
        return A.copy()
    if int(det(F, A)) == 0:
        raise PreconditionError("matrix is singular")
    return np.linalg.inv(A)


def kernel_basis(F: FieldDescriptor, A: FieldArray) -> FieldArray:
    """Columns spanning {x : A x = 0}, one per free variable of the echelon form."""
    cols = A.shape[1]
    R, pivots = rref(A)
    free = [j for j in range(cols) if j not in pivots]
    out = zeros(F, cols, len(free))
    for t, j in enumerate(free):
        out[j, t] = 1
        for r, c in enumerate(pivots):
            out[c, t] = -R[r, j]
    return out


def solve(F: FieldDescriptor, A: FieldArray, b: FieldArray) -> FieldArray:
    """One solution of A x = b (free variables set to zero)."""
    if A.shape[0] != b.shape[0]:
        raise ShapeError(f"solve: {A.shape} against right-hand side {b.shape}")
    cols = A.shape[1]
    aug = np.hstack([A, b.reshape(-1, 1)])
    R, pivots = rref(aug)
    if cols in pivots:
        raise InconsistentSystemError("linear system has no solution")
    x = F.GF.Zeros(cols)
    for r, c in enumerate(pivots):
        x[c] = R[r, cols]
    return x


def express(F: FieldDescriptor, basis: FieldArray, targets: FieldArray) -> FieldArray:
    """Coordinates X with basis @ X = targets; basis columns must be independent."""
    k = basis.shape[1]
    if targets.ndim == 1:
        targets = targets.reshape(-1, 1)
    if k == 0:
        if not is_zero(targets):
            raise InconsistentSystemError("target outside the zero subspace")
        return zeros(F, 0, targets.shape[1])
    R, pivots = rref(np.hstack([basis, targets]))
    if pivots[:k] != list(range(k)):
        raise PreconditionError("basis columns are dependent")
    if any(c >= k for c in pivots):
        raise InconsistentSystemError("target outside the span")
    return R[:k, k:]


def krylov(F: FieldDescriptor, A: FieldArray, v: FieldArray, k: int) -> FieldArray:
    """Columns v, Av, ..., A^{k-1} v."""
    out = zeros(F, v.shape[0], k)
    w = v
    for i in range(k):
        out[:, i] = w
        w = A @ w
    return out


def hstack(F: FieldDescriptor, n: int, parts: Iterable[FieldArray]) -> FieldArray:
    parts = [p for p in parts if p.shape[1]]
    if not parts:
        return zeros(F, n, 0)
    return np.hstack(parts)


def matrix_power(F: FieldDescriptor, A: FieldArray, k: int) -> FieldArray:
    out = identity(F, A.shape[0])
    for _ in range(k):
        out = out @ A
    return out
