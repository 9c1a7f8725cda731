"""
Property suites behind `clb verify`.

Every suite walks a set of instances (exhaustively when the instance space is small
and no trial count was given, otherwise `trials` seeded samples) and records each
counterexample as {input, expected, got}.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.algebra.poly import Poly, constant, poly_at, poly_to_json
from clb.blocks.stages import check_filtration_laws, classify
from clb.blocks.types import SPLIT
from clb.config import EnumerationBudget
from clb.errors import BudgetError, InputError, InternalCheckError, PreconditionError
from clb.forms.space import GROUP_BY_ALGEBRA, FormSpace, standard_space
from clb.forms.twisted import TwistedElement
from clb.identities.automorphisms import mu, nu, rho, rho_equivariant, rho_inverse, rho_preconditions
from clb.identities.cayley import cayley, cayley_inv, equivariant, in_cayley_domain, in_g0
from clb.identities.perturbation import perturbation_verdict
from clb.identities.support import bracket_image, block_support, coefficient_identities, in_Q, in_R
from clb.linalg.canonical import char_poly
from clb.linalg.matrix import det, equal
from clb.orbits.groups import all_vectors as all_vector_rows, enumerate_group
from clb.utils.hashing import digest
from clb.verify.sampling import Sampler, all_matrices, all_vectors
from clb.witness.witness import witness_global

log = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 100_000
DEFAULT_TRIALS = 1000
RHO_PER_INSTANCE = 100
EQUIVARIANCE_TRIALS = 100
# lexicographic fallback search for a nonzero vector in R_A
R_SEARCH_LIMIT = 6561
SUPPORT_MAX_DIM = 4


@dataclass
class SuiteResult:
    suite: str
    field: FieldDescriptor
    algebra: str
    n: int
    seed: int
    exhaustive: bool = False
    instances: int = 0
    vacuous: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, input: dict[str, Any], expected: Any, got: Any) -> None:
        self.failures.append({"input": input, "expected": expected, "got": got})

    def to_json(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "field": self.field.to_json(),
            "algebra": self.algebra,
            "n": self.n,
            "seed": self.seed,
            "exhaustive": self.exhaustive,
            "instances": self.instances,
            "vacuous": self.vacuous,
            "failures": sorted(self.failures, key=lambda f: digest(f["input"])),
        }


def space_for(F: FieldDescriptor, algebra: str, n: int) -> FormSpace:
    if algebra not in GROUP_BY_ALGEBRA:
        raise InputError(f"unknown algebra {algebra!r}; expected one of o, so, u, sp")
    return standard_space(F, GROUP_BY_ALGEBRA[algebra], n)


def _enc(F: FieldDescriptor, **items: Any) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for name, value in items.items():
        if isinstance(value, Poly):
            out[name] = poly_to_json(F, value)
        elif isinstance(value, TwistedElement):
            out[name] = value.to_json(F)
        elif isinstance(value, F.GF):
            out[name] = F.encode(value)
        else:
            out[name] = value
    return out


def _exhaustive(trials: int | None, size: int) -> bool:
    return trials is None and size <= EXHAUSTIVE_LIMIT


def _lie_size(S: FormSpace) -> int:
    return S.field.p ** len(S.lie_basis)


def _r_vector(S: FormSpace, sampler: Sampler, A: FieldArray, tries: int = 32) -> FieldArray | None:
    """
    A nonzero v with in_R: random draws first, then the first hit in lexicographic
    order on small spaces. None when R_A = {0} or the space is too large to search.
    """
    for _ in range(tries):
        v = sampler.vector()
        if any(int(x) for x in v) and in_R(S, A, v):
            return v
    if S.field.q ** S.n <= R_SEARCH_LIMIT:
        for v in all_vector_rows(S.field, S.n)[1:]:
            if in_R(S, A, v):
                return v
    return None


# --- perturbation -------------------------------------------------------------


def suite_perturbation(S: FormSpace, res: SuiteResult, sampler: Sampler, trials: int | None) -> None:
    F, n = S.field, S.n
    res.exhaustive = _exhaustive(trials, F.q ** (n * n + 2 * n))

    def cases() -> Iterator[tuple[FieldArray, FieldArray, FieldArray]]:
        if res.exhaustive:
            for A in all_matrices(F, n):
                for v in all_vectors(F, n):
                    for phi in all_vectors(F, n):
                        yield A, v, phi
        else:
            for _ in range(trials or DEFAULT_TRIALS):
                yield sampler.matrix(), sampler.vector(), sampler.vector()

    for A, v, phi in cases():
        res.instances += 1
        verdict = perturbation_verdict(F, A, v, phi)
        if not verdict.consistent:
            res.fail(_enc(F, A=A, v=v, phi=phi), "consistent verdict", verdict.to_json())


# --- Q inside R ---------------------------------------------------------------


def suite_qr(S: FormSpace, res: SuiteResult, sampler: Sampler, trials: int | None) -> None:
    F, n = S.field, S.n
    res.exhaustive = _exhaustive(trials, _lie_size(S) * F.q**n)

    def cases() -> Iterator[tuple[FieldArray, Iterable[FieldArray]]]:
        if res.exhaustive:
            for A in S.lie_elements():
                yield A, all_vectors(F, n)
        else:
            for _ in range(trials or DEFAULT_TRIALS):
                yield sampler.lie(), [sampler.vector()]

    for A, vectors in cases():
        image = bracket_image(S, A)
        # on o only invertible A force <v, v> = 0; nilpotent A is the extreme case
        weak = S.kind == "symmetric" and not int(det(F, A))
        for v in vectors:
            res.instances += 1
            if not in_Q(S, A, v, image=image):
                continue
            if not weak:
                if not in_R(S, A, v):
                    res.fail(_enc(F, A=A, v=v), "in_R", False)
                continue
            w = A @ v
            for k in range(1, max(n, 1) + 1):
                if int(S.pair(w, v)):
                    res.fail(_enc(F, A=A, v=v, k=k), "<A^k v, v> = 0", int(S.pair(w, v)))
                    break
                w = A @ w


# --- Cayley -------------------------------------------------------------------


def _group_elements(S: FormSpace, sampler: Sampler, trials: int | None, budget: EnumerationBudget) -> tuple[bool, list[FieldArray]]:
    if trials is None:
        try:
            return True, enumerate_group(S, budget).elements
        except BudgetError:
            log.info("group too large to enumerate; sampling instead")
    return False, [sampler.group() for _ in range(trials or DEFAULT_TRIALS)]


def suite_cayley(S: FormSpace, res: SuiteResult, sampler: Sampler, trials: int | None, budget: EnumerationBudget) -> None:
    F = S.field
    res.exhaustive, elements = _group_elements(S, sampler, trials, budget)
    for variant in (1, -1):
        for g in elements:
            if not in_cayley_domain(S, g, variant):
                continue
            res.instances += 1
            B = cayley(S, g, variant)
            if not in_g0(S, B):
                res.fail(_enc(F, g=g, variant=variant), "cayley(g) in g_0", _enc(F, B=B))
            elif not equal(cayley_inv(S, B, variant), g):
                res.fail(_enc(F, g=g, variant=variant), "cayley_inv(cayley(g)) = g", _enc(F, B=B))

        for _ in range(trials or DEFAULT_TRIALS):
            B = sampler.lie_g0()
            if B is None:
                continue
            g = cayley_inv(S, B, variant)
            if not S.in_group(g):
                # SO in odd dimension: C_1 lands in O \ SO
                continue
            res.instances += 1
            if not equal(cayley(S, g, variant), B):
                res.fail(_enc(F, B=B, variant=variant), "cayley(cayley_inv(B)) = B", _enc(F, g=g))

        for _ in range(min(trials or EQUIVARIANCE_TRIALS, EQUIVARIANCE_TRIALS)):
            g = sampler.group()
            if not in_cayley_domain(S, g, variant):
                continue
            for t in (sampler.twisted(), TwistedElement(sampler.group(), 1, False)):
                res.instances += 1
                if not equivariant(S, g, t, variant):
                    res.fail(_enc(F, g=g, t=t, variant=variant), "cayley(t.g) = t.cayley(g)", False)


# --- Delta preservation -------------------------------------------------------


def suite_delta(S: FormSpace, res: SuiteResult, sampler: Sampler, trials: int | None) -> None:
    F = S.field
    if S.kind == "hermitian":
        lams = F.trace_zero_elements()
        move: Callable[..., tuple[FieldArray, FieldArray]] = nu
    elif S.kind == "symplectic":
        lams = F.elements()
        move = nu
    else:
        lams = F.elements()
        move = mu
    for _ in range(trials or DEFAULT_TRIALS):
        A = sampler.lie()
        v = _r_vector(S, sampler, A)
        if v is None:
            res.vacuous += 1
            continue
        base = char_poly(F, A)
        for lam in lams:
            res.instances += 1
            B, _ = move(S, A, v, lam)
            if not S.in_lie_algebra(B):
                res.fail(_enc(F, A=A, v=v, lam=lam), "image in g", _enc(F, B=B))
            elif char_poly(F, B) != base:
                res.fail(_enc(F, A=A, v=v, lam=lam), poly_to_json(F, base), poly_to_json(F, char_poly(F, B)))


# --- rho ----------------------------------------------------------------------


def admissible_polys(S: FormSpace, sampler: Sampler, A: FieldArray, count: int) -> list[Poly]:
    """Up to `count` distinct g of degree < n passing the rho preconditions (always including 1)."""
    F = S.field
    found: list[Poly] = [constant(F, 1)]
    tries = 0
    while len(found) < count and tries < 8 * count:
        tries += 1
        g = sampler.polynomial(max(S.n - 1, 0))
        if any(g == h for h in found):
            continue
        if not rho_preconditions(S, A, g):
            found.append(g)
    return found


def suite_rho(S: FormSpace, res: SuiteResult, sampler: Sampler, trials: int | None, per_instance: int = RHO_PER_INSTANCE) -> None:
    F = S.field
    for _ in range(trials or DEFAULT_TRIALS):
        A = sampler.lie()
        v = _r_vector(S, sampler, A)
        if v is None:
            res.vacuous += 1
            continue
        t = sampler.twisted()
        for g in admissible_polys(S, sampler, A, per_instance):
            res.instances += 1
            _, w = rho(S, A, v, g)
            _, back = rho_inverse(S, A, w, g)
            if not equal(back, v):
                res.fail(_enc(F, A=A, v=v, g=g), "rho_inverse(rho(v)) = v", _enc(F, got=back))
            if not equal(w, poly_at(F, g, A) @ v):
                res.fail(_enc(F, A=A, v=v, g=g), "g(A) v", _enc(F, got=w))
            if not rho_equivariant(S, A, v, g, t):
                res.fail(_enc(F, A=A, v=v, g=g, t=t), "rho(t.(A, v)) = t.rho(A, v)", False)


# --- coefficient identities ---------------------------------------------------


def suite_coeffs(S: FormSpace, res: SuiteResult, sampler: Sampler, trials: int | None) -> None:
    F = S.field
    if S.kind != "symplectic":
        raise PreconditionError("the coeffs suite runs on sp only")
    for _ in range(trials or DEFAULT_TRIALS):
        A, v, lam = sampler.lie(), sampler.vector(), sampler.scalar()
        res.instances += 1
        report = coefficient_identities(S, A, v, lam)
        for name in ("c1", "c2"):
            if not report[name]["holds"]:
                res.fail(_enc(F, A=A, v=v, lam=lam, coefficient=name), report[name]["rhs"], report[name]["lhs"])


# --- blocks, witnesses and per-block support ----------------------------------


def suite_blocks(S: FormSpace, res: SuiteResult, sampler: Sampler, trials: int | None) -> None:
    F = S.field
    for _ in range(trials or DEFAULT_TRIALS):
        A = sampler.lie()
        res.instances += 1
        try:
            D = classify(S, A)
            witness_global(S, A, D)
        except InternalCheckError as e:
            res.fail(_enc(F, A=A), "blocks and witness pass their checks", str(e))
            continue
        if not check_filtration_laws(S, A):
            res.fail(_enc(F, A=A), "filtration laws on type-B summands", False)
        for b in D.blocks:
            if b.variant == SPLIT or b.dim > SUPPORT_MAX_DIM or F.q**b.dim > EXHAUSTIVE_LIMIT:
                continue
            local = FormSpace(F, S.kind, b.gram, S.group)
            support = block_support(S, b)
            image = bracket_image(local, b.operator)
            for u in all_vectors(F, b.dim):
                if in_Q(local, b.operator, u, image=image) and not support.contains(b.basis @ u):
                    res.fail(_enc(F, A=A, block=b.variant, u=u), "v in block support", False)


SUITES = ("perturbation", "qr", "cayley", "delta", "rho", "coeffs", "blocks")


def run_suite(
    suite: str,
    F: FieldDescriptor,
    algebra: str,
    n: int,
    trials: int | None = None,
    seed: int = 0,
    budget: EnumerationBudget | None = None,
) -> SuiteResult:
    """`trials=None`: exhaustive where the instance space allows, else the default sample count."""
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    S = space_for(F, algebra, n)
    sampler = Sampler(S, seed)
    res = SuiteResult(suite, F, algebra, n, seed)
    budget = budget or EnumerationBudget()
    if suite == "perturbation":
        suite_perturbation(S, res, sampler, trials)
    elif suite == "qr":
        suite_qr(S, res, sampler, trials)
    elif suite == "cayley":
        suite_cayley(S, res, sampler, trials, budget)
    elif suite == "delta":
        suite_delta(S, res, sampler, trials)
    elif suite == "rho":
        suite_rho(S, res, sampler, trials)
    elif suite == "coeffs":
        suite_coeffs(S, res, sampler, trials)
    else:
        suite_blocks(S, res, sampler, trials)
    log.info(
        "suite %s on %s_%d(%s): %d instances, %d vacuous, %d failures",
        suite, algebra, n, F.label, res.instances, res.vacuous, len(res.failures),
    )
    return res
