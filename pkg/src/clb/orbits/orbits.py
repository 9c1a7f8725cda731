"""
Orbit census for finite classical groups acting on g, G, g x V and G x V.

Points are stored as rows of F_p-coordinates (the `to_prime` flattening of each
component, concatenated). Every group element acts F_p-linearly on these rows, and so
does every twisted element once the group coordinate has been inverted, so each
action is a D x D matrix over F_p applied to the whole point table at once.
Points are kept sorted by their base-p key; the least index in an orbit is its
lexicographically least point.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Sequence

import numpy as np

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.config import EnumerationBudget
from clb.errors import BudgetError, InputError, InternalCheckError, PreconditionError
from clb.forms.space import FormSpace, standard_space
from clb.forms.twisted import TwistedElement, sigma_builder
from clb.linalg.matrix import block_diag, identity, ints, inverse
from clb.orbits.groups import GroupEnumeration, enumerate_group
from clb.orbits.union_find import find_orbits

log = logging.getLogger(__name__)

HEADER = "finite-field analogue; not a verification of the local-field theorems"

SPACE_G_ALG = "g"
SPACE_G = "G"
SPACE_GXV_ALG = "gxV"
SPACE_GXV = "GxV"
SPACE_PAIR = "pair"
SPACES = (SPACE_G_ALG, SPACE_G, SPACE_GXV_ALG, SPACE_GXV)

# component kinds: "g" (Lie algebra coordinate), "G" (group coordinate), "V" (vector)
_COMPONENTS = {
    SPACE_G_ALG: ("g",),
    SPACE_G: ("G",),
    SPACE_GXV_ALG: ("g", "V"),
    SPACE_GXV: ("G", "V"),
    SPACE_PAIR: ("G",),
}
_NAMES = {"g": "A", "G": "g", "V": "v"}

ComponentMap = Callable[[list[FieldArray]], list[FieldArray]]


class _Layout:
    def __init__(self, F: FieldDescriptor, n: int, kinds: Sequence[str]):
        self.field = F
        self.n = n
        self.kinds = tuple(kinds)
        self.shapes = [(n, n) if k != "V" else (n,) for k in self.kinds]
        self.sizes = [F.degree * int(np.prod(s)) for s in self.shapes]
        self.offsets = [int(x) for x in np.cumsum([0] + self.sizes[:-1])]

    @property
    def D(self) -> int:
        return sum(self.sizes)

    def slice(self, i: int) -> slice:
        return slice(self.offsets[i], self.offsets[i] + self.sizes[i])

    def split(self, row: np.ndarray) -> list[FieldArray]:
        P = self.field.prime_field
        return [
            self.field.from_prime(P(row[self.slice(i)]), shape)
            for i, shape in enumerate(self.shapes)
        ]

    def join(self, comps: Sequence[FieldArray]) -> np.ndarray:
        if not comps:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([ints(self.field.to_prime(c)) for c in comps])

    def describe(self, row: np.ndarray) -> dict[str, Any]:
        return {
            _NAMES[k]: self.field.encode(c) for k, c in zip(self.kinds, self.split(row))
        }

    def linear(self, fn: ComponentMap) -> np.ndarray:
        """The F_p-matrix of an F_p-linear map on point rows."""
        D = self.D
        L = np.zeros((D, D), dtype=np.int64)
        for t in range(D):
            e = np.zeros(D, dtype=np.int64)
            e[t] = 1
            L[:, t] = self.join(fn(self.split(e)))
        return L


class _PointSet:
    def __init__(self, layout: _Layout, rows: np.ndarray):
        p = layout.field.p
        if p ** layout.D >= 2**62:
            raise BudgetError(f"point keys need {layout.D} base-{p} digits; too many for int64")
        self.p = p
        self.weights = p ** np.arange(layout.D - 1, -1, -1, dtype=np.int64)
        keys = rows @ self.weights
        order = np.argsort(keys, kind="stable")
        self.rows = rows[order]
        self.keys = keys[order]

    def __len__(self) -> int:
        return int(self.keys.size)

    def index(self, rows: np.ndarray) -> np.ndarray:
        k = rows @ self.weights
        idx = np.clip(np.searchsorted(self.keys, k), 0, len(self) - 1)
        if not np.array_equal(self.keys[idx], k):
            raise InternalCheckError("action maps a point outside the enumerated space")
        return idx

    def image(self, L: np.ndarray, rows: np.ndarray | None = None) -> np.ndarray:
        src = self.rows if rows is None else rows
        return self.index((src @ L.T) % self.p)


def _conjugation(F: FieldDescriptor, g: FieldArray, kinds: Sequence[str]) -> ComponentMap:
    ginv = inverse(F, g)

    def fn(comps: list[FieldArray]) -> list[FieldArray]:
        return [g @ c if k == "V" else g @ c @ ginv for k, c in zip(kinds, comps)]

    return fn


def _twisted_map(F: FieldDescriptor, t: TwistedElement, kinds: Sequence[str]) -> ComponentMap:
    """(M, delta) on each component; the group coordinate is assumed already inverted when delta = -1."""
    M = t.matrix
    Minv = inverse(F, M)
    flip = t.delta == -1

    def fn(comps: list[FieldArray]) -> list[FieldArray]:
        out = []
        for k, c in zip(kinds, comps):
            s = F.conj(c) if t.conjugate else c
            if k == "V":
                y = M @ s
                out.append(-y if flip else y)
            elif k == "g":
                y = M @ s @ Minv
                out.append(-y if flip else y)
            else:
                out.append(M @ s @ Minv)
        return out

    return fn


def _product(parts: list[np.ndarray]) -> np.ndarray:
    out = parts[0]
    for B in parts[1:]:
        out = np.hstack([np.repeat(out, B.shape[0], axis=0), np.tile(B, (out.shape[0], 1))])
    return out


def _all_prime_rows(p: int, length: int) -> np.ndarray:
    rows = list(itertools.product(range(p), repeat=length))
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), length)


def _lie_rows(S: FormSpace) -> np.ndarray:
    F = S.field
    basis = np.asarray([ints(F.to_prime(X)) for X in S.lie_basis], dtype=np.int64)
    if basis.size == 0:
        return np.zeros((1, F.degree * S.n * S.n), dtype=np.int64)
    coeffs = _all_prime_rows(F.p, basis.shape[0])
    return (coeffs @ basis) % F.p


def _group_rows(F: FieldDescriptor, elements: Sequence[FieldArray]) -> np.ndarray:
    return np.asarray([ints(F.to_prime(g)) for g in elements], dtype=np.int64)


def _component_count(S: FormSpace, enumeration: GroupEnumeration, kind: str) -> int:
    F = S.field
    if kind == "g":
        return F.p ** len(S.lie_basis)
    if kind == "G":
        return enumeration.order
    return F.q**S.n


@dataclass
class OrbitRecord:
    size: int
    representative: dict[str, Any]
    twisted_stable: bool | None = None
    witness: dict[str, Any] | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"size": self.size, "representative": self.representative}
        if self.twisted_stable is not None:
            out["twisted_stable"] = self.twisted_stable
            out["witness"] = self.witness
        return out


@dataclass(eq=False)
class _Context:
    space: FormSpace
    layout: _Layout
    points: _PointSet
    labels: np.ndarray
    rep_index: np.ndarray
    twisted: list[TwistedElement]

    def invert_group_part(self, rows: np.ndarray) -> np.ndarray:
        if "G" not in self.layout.kinds:
            return rows
        F = self.space.field
        sl = self.layout.slice(self.layout.kinds.index("G"))
        out = rows.copy()
        uniq, back = np.unique(rows[:, sl], axis=0, return_inverse=True)
        shape = (self.layout.n, self.layout.n)
        inv = np.asarray(
            [ints(F.to_prime(inverse(F, F.from_prime(F.prime_field(u), shape)))) for u in uniq],
            dtype=np.int64,
        )
        out[:, sl] = inv[np.asarray(back).reshape(-1)]
        return out

    def twisted_image(self, t: TwistedElement, rows: np.ndarray) -> np.ndarray:
        src = self.invert_group_part(rows) if t.delta == -1 else rows
        L = self.layout.linear(_twisted_map(self.space.field, t, self.layout.kinds))
        return self.points.image(L, src)


@dataclass(eq=False)
class OrbitReport:
    space: str
    field: FieldDescriptor
    group: str
    n: int
    group_order: int
    points: int
    orbits: list[OrbitRecord]
    header: str = HEADER
    context: _Context | None = field(default=None, repr=False)

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    @property
    def all_stable(self) -> bool | None:
        if any(o.twisted_stable is None for o in self.orbits):
            return None
        return all(o.twisted_stable for o in self.orbits)

    def to_json(self) -> dict[str, Any]:
        return {
            "header": self.header,
            "space": self.space,
            "field": self.field.to_json(),
            "group": self.group,
            "n": self.n,
            "group_order": self.group_order,
            "points": self.points,
            "orbit_count": self.orbit_count,
            "all_stable": self.all_stable,
            "orbits": [o.to_json() for o in self.orbits],
        }


def _partition(
    tag: str,
    S: FormSpace,
    group_order: int,
    layout: _Layout,
    points: _PointSet,
    perms: Iterator[np.ndarray],
    twisted: list[TwistedElement],
    n: int,
) -> OrbitReport:
    parts = find_orbits(perms, len(points))
    labels = np.empty(len(points), dtype=np.int64)
    for i, orbit in enumerate(parts):
        labels[orbit] = i
        if group_order % len(orbit):
            raise InternalCheckError(f"orbit of size {len(orbit)} does not divide |G| = {group_order}")
    if sum(len(o) for o in parts) != len(points):
        raise InternalCheckError("orbit sizes do not sum to the number of points")

    rep_index = np.asarray([o[0] for o in parts], dtype=np.int64)
    records = [OrbitRecord(len(o), layout.describe(points.rows[o[0]])) for o in parts]
    ctx = _Context(S, layout, points, labels, rep_index, twisted)
    log.info("%s: %d points, %d orbits under a group of order %d", tag, len(points), len(parts), group_order)
    return OrbitReport(tag, S.field, S.group, n, group_order, len(points), records, context=ctx)


def orbits(
    enumeration: GroupEnumeration, space: str, budget: EnumerationBudget | None = None
) -> OrbitReport:
    """Partition `space` into G-orbits (conjugation on g and G, the defining action on V)."""
    if space not in SPACES:
        raise InputError(f"unknown orbit space {space!r}; expected one of {', '.join(SPACES)}")
    budget = budget or EnumerationBudget()
    S = enumeration.space
    F = S.field
    kinds = _COMPONENTS[space]

    total = 1
    for k in kinds:
        total *= _component_count(S, enumeration, k)
    if total > budget.max_points:
        raise BudgetError(f"space {space} has {total} points, exceeding max_points={budget.max_points}")

    layout = _Layout(F, S.n, kinds)
    parts = []
    for k in kinds:
        if k == "g":
            parts.append(_lie_rows(S))
        elif k == "G":
            parts.append(_group_rows(F, enumeration.elements))
        else:
            parts.append(_all_prime_rows(F.p, F.degree * S.n))
    points = _PointSet(layout, _product(parts))

    perms = (points.image(layout.linear(_conjugation(F, g, kinds))) for g in enumeration.elements)
    return _partition(space, S, enumeration.order, layout, points, perms, enumeration.twisted_coset, S.n)


def check_twisted_stability(report: OrbitReport) -> bool:
    """Search the twisted coset for an element mapping each orbit to itself."""
    ctx = report.context
    if ctx is None:
        raise PreconditionError("orbit report carries no action context")
    F = ctx.space.field
    reps = ctx.points.rows[ctx.rep_index]
    want = np.arange(len(report.orbits))
    found = np.full(len(report.orbits), -1, dtype=np.int64)
    for j, t in enumerate(ctx.twisted):
        open_ = np.flatnonzero(found < 0)
        if open_.size == 0:
            break
        hits = ctx.labels[ctx.twisted_image(t, reps[open_])] == want[open_]
        found[open_[hits]] = j
    for i, record in enumerate(report.orbits):
        record.twisted_stable = bool(found[i] >= 0)
        record.witness = ctx.twisted[found[i]].to_json(F) if found[i] >= 0 else None
    unstable = int(np.sum(found < 0))
    if unstable:
        log.warning("%s: %d of %d orbits are not twisted-stable", report.space, unstable, len(found))
    return unstable == 0


def preserves_orbit(report: OrbitReport, t: TwistedElement, components: Sequence[FieldArray]) -> bool:
    """Whether t maps the point given by `components` into its own G-orbit."""
    ctx = report.context
    if ctx is None:
        raise PreconditionError("orbit report carries no action context")
    row = ctx.layout.join(components).reshape(1, -1)
    here = ctx.labels[ctx.points.index(row)]
    there = ctx.labels[ctx.twisted_image(t, row)]
    return bool(here[0] == there[0])


def check_pair_sigma(
    F: FieldDescriptor, group: str, n: int, budget: EnumerationBudget | None = None
) -> OrbitReport:
    """
    G(V) inside G(W), W = V + F e_{n+1} with e_{n+1} orthogonal to V and of length +-1,
    acting on G(W) by conjugation; sigma(g) = M sigma_0(g^{-1}) M^{-1} with (M, -1)
    from sigma_builder on V extended by 1. Every orbit should be sigma-stable.
    """
    if group == "Sp":
        raise PreconditionError("pair check is for O, SO and U; sp is rejected")
    if n < 1:
        raise InputError(f"pair check needs dim V >= 1, got {n}")
    budget = budget or EnumerationBudget()
    W = standard_space(F, group, n + 1)
    V = standard_space(F, group, n)
    big = enumerate_group(W, budget)
    small = enumerate_group(V, budget)
    if big.order > budget.max_points:
        raise BudgetError(f"G(W) has {big.order} points, exceeding max_points={budget.max_points}")

    kinds = _COMPONENTS[SPACE_PAIR]
    layout = _Layout(F, n + 1, kinds)
    points = _PointSet(layout, _group_rows(F, big.elements))
    one = identity(F, 1)
    embedded = [block_diag(F, [h, one]) for h in small.elements]
    perms = (points.image(layout.linear(_conjugation(F, g, kinds))) for g in embedded)

    s = sigma_builder(V)
    sigma = TwistedElement(block_diag(F, [s.matrix, one]), -1, s.conjugate)
    report = _partition(SPACE_PAIR, W, small.order, layout, points, perms, [sigma], n + 1)

    ctx = report.context
    assert ctx is not None
    reps = points.rows[ctx.rep_index]
    stable = ctx.labels[ctx.twisted_image(sigma, reps)] == np.arange(len(report.orbits))
    datum = {"sigma": sigma.to_json(F)}
    for record, ok in zip(report.orbits, stable):
        record.twisted_stable = bool(ok)
        record.witness = datum if ok else None
    if not bool(np.all(stable)):
        log.warning("pair %s_%d in %s_%d: %d orbits not sigma-stable", group, n, group, n + 1, int(np.sum(~stable)))
    return report
