"""
Brute-force enumeration of small classical groups and their twisted cosets.

Columns are chosen one at a time from all vectors of F^n; the pairing table
T[a, b] = <x_a, x_b> prunes every column against the ones already placed, so the
search only ever completes matrices with M^T B conj(M) equal to the target Gram.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any

import galois
import numpy as np

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.blocks.descent import Descent, centralizer_in_group, unitary_group_order
from clb.config import EnumerationBudget
from clb.errors import BudgetError, InternalCheckError
from clb.forms.space import FormSpace
from clb.forms.twisted import TwistedElement
from clb.linalg.matrix import det, ints, inverse, key

log = logging.getLogger(__name__)


@dataclass(eq=False)
class GroupEnumeration:
    space: FormSpace
    elements: list[FieldArray]
    twisted_coset: list[TwistedElement]
    _index: dict[tuple[int, ...], int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._index = {key(g): i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, g: FieldArray) -> bool:
        return key(g) in self._index

    def index_of(self, g: FieldArray) -> int:
        return self._index[key(g)]

    def is_closed(self) -> bool:
        """Closure under products and inverses (quadratic in |G|; meant for tests)."""
        F = self.space.field
        for g in self.elements:
            if not self.contains(inverse(F, g)):
                return False
            for h in self.elements:
                if not self.contains(g @ h):
                    return False
        return True

    def to_json(self) -> dict[str, Any]:
        return {
            "space": self.space.to_json(),
            "order": self.order,
            "twisted_order": len(self.twisted_coset),
        }


def check_budget(S: FormSpace, budget: EnumerationBudget) -> None:
    F = S.field
    if S.kind == "hermitian":
        if S.n > budget.max_dim_hermitian:
            raise BudgetError(f"dimension {S.n} exceeds max_dim_hermitian={budget.max_dim_hermitian}")
        if F.q > budget.max_q_hermitian:
            raise BudgetError(f"field order {F.q} exceeds max_q_hermitian={budget.max_q_hermitian}")
        return
    if S.n > budget.max_dim:
        raise BudgetError(f"dimension {S.n} exceeds max_dim={budget.max_dim}")
    if F.q > budget.max_q:
        raise BudgetError(f"field order {F.q} exceeds max_q={budget.max_q}")


def all_vectors(F: FieldDescriptor, n: int) -> FieldArray:
    """Every vector of F^n as rows, in lexicographic order of the field integers."""
    rows = list(itertools.product(range(F.q), repeat=n))
    return F.GF(np.asarray(rows, dtype=np.int64).reshape(len(rows), n))


def _column_search(T: np.ndarray, target: np.ndarray, n: int) -> list[tuple[int, ...]]:
    diag = np.diagonal(T)
    candidates = [np.flatnonzero(diag == target[j, j]) for j in range(n)]
    out: list[tuple[int, ...]] = []

    def extend(chosen: list[int]) -> None:
        j = len(chosen)
        if j == n:
            out.append(tuple(chosen))
            return
        c = candidates[j]
        for i, ci in enumerate(chosen):
            c = c[(T[ci, c] == target[i, j]) & (T[c, ci] == target[j, i])]
            if c.size == 0:
                return
        for x in c:
            extend(chosen + [int(x)])

    extend([])
    return out


def enumerate_group(S: FormSpace, budget: EnumerationBudget | None = None) -> GroupEnumeration:
    """All of G(V) and all (M, -1) in the twisted coset."""
    budget = budget or EnumerationBudget()
    check_budget(S, budget)
    F = S.field
    n = S.n
    if n == 0:
        empty = F.GF(np.zeros((0, 0), dtype=np.int64))
        return GroupEnumeration(S, [empty], [TwistedElement(empty, -1, F.degree == 2)])

    X = all_vectors(F, n)
    T = ints(X @ S.gram @ F.conj(X).T)
    cols = X.T

    def build(target: FieldArray) -> list[FieldArray]:
        return [cols[:, list(choice)] for choice in _column_search(T, ints(target), n)]

    elements = build(S.gram)
    coset = build(S.gram.T)
    if S.group == "SO":
        coset_det = F.scalar((-1) ** ((n + 1) // 2))
        elements = [g for g in elements if int(det(F, g)) == 1]
        coset = [M for M in coset if int(det(F, M)) == int(coset_det)]

    if len(coset) != len(elements):
        raise InternalCheckError(
            f"twisted coset has {len(coset)} elements but G has {len(elements)}"
        )
    semilinear = F.degree == 2
    twisted = [TwistedElement(M, -1, semilinear) for M in coset]
    log.info("enumerated %s_%d(%s): |G| = %d", S.group, n, F.label, len(elements))
    return GroupEnumeration(S, elements, twisted)


def classical_order(S: FormSpace) -> int:
    """|G(V)| from the closed formulas (q the order of the fixed field)."""
    F = S.field
    n = S.n
    q = F.p
    if S.group == "U":
        return unitary_group_order(q, n)
    if S.group == "Sp":
        m = n // 2
        out = q ** (m * m)
        for i in range(1, m + 1):
            out *= q ** (2 * i) - 1
        return out
    if n == 0:
        return 1
    if n % 2:
        m = n // 2
        out = 2 * q ** (m * m)
        for i in range(1, m + 1):
            out *= q ** (2 * i) - 1
    else:
        m = n // 2
        disc = ((-1) ** m) * int(det(F, S.gram))
        plus = galois.legendre_symbol(disc % q, q) == 1
        out = 2 * q ** (m * (m - 1)) * (q**m - (1 if plus else -1))
        for i in range(1, m):
            out *= q ** (2 * i) - 1
    return out // 2 if S.group == "SO" else out


def descent_census(D: Descent, budget: EnumerationBudget | None = None) -> dict[str, Any]:
    """
    Compare the centralizer of A in Sp(V) with the unitary group of the descended space:
    orders, the avatar correspondence and (for deg f = 2) an element-for-element match.
    """
    budget = budget or EnumerationBudget()
    S = D.space
    group = enumerate_group(S, budget)
    central = centralizer_in_group(S, D.operator, group.elements)
    out: dict[str, Any] = {
        "centralizer_order": len(central),
        "unitary_order": D.unitary_order(),
        "correspondence_holds": all(D.correspondence_holds(g) for g in central),
    }
    herm = D.hermitian_space()
    if herm is not None:
        unitary = enumerate_group(herm, budget)
        avatars = {key(D.transport(D.avatar(g))) for g in central}
        out["matched"] = avatars == {key(u) for u in unitary.elements} and len(avatars) == len(central)
    return out
