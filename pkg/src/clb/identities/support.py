from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.algebra.poly import poly_at, x_poly
from clb.blocks.types import EVEN_NILPOTENT_O, NON_SPLIT, ODD_NILPOTENT_SP, SimpleBlock
from clb.errors import PreconditionError
from clb.forms.space import FormSpace, phi
from clb.linalg.canonical import berkowitz, char_poly
from clb.linalg.matrix import hstack, identity, is_zero, matrix_power, rank
from clb.linalg.subspace import Subspace


def in_gamma(S: FormSpace, v: FieldArray) -> bool:
    return int(S.pair(v, v)) == 0


def in_gamma1(S: FormSpace, A: FieldArray, v: FieldArray) -> bool:
    return int(S.pair(A @ v, v)) == 0


def in_R(S: FormSpace, A: FieldArray, v: FieldArray) -> bool:
    """<A^k v, v> = 0 for k = 0..n-1 (Cayley-Hamilton covers the rest)."""
    w = v
    for _ in range(max(S.n, 1)):
        if int(S.pair(w, v)):
            return False
        w = A @ w
    return True


def q_target(S: FormSpace, A: FieldArray, v: FieldArray) -> FieldArray:
    """phi_v on sp, w phi_v on u (the direction of nu), A phi_v + phi_v A on o."""
    P = phi(S, v)
    if S.kind == "symmetric":
        return A @ P + P @ A
    if S.kind == "hermitian":
        return S.field.omega * P
    return P


def bracket_image(S: FormSpace, A: FieldArray) -> FieldArray:
    """F_p-coordinates of [A, X_i] for the F_p-basis X_i of g, as columns."""
    F = S.field
    P = FieldDescriptor(F.p, 1)
    cols = [F.to_prime(A @ X - X @ A).reshape(-1, 1) for X in S.lie_basis]
    return hstack(P, F.degree * S.n * S.n, cols)


def in_Q(S: FormSpace, A: FieldArray, v: FieldArray, image: FieldArray | None = None) -> bool:
    """`image` may be passed in when many v are tested against the same A."""
    if image is None:
        image = bracket_image(S, A)
    target = S.field.to_prime(q_target(S, A, v)).reshape(-1, 1)
    if image.shape[1] == 0:
        return is_zero(target)
    both = hstack(FieldDescriptor(S.field.p, 1), image.shape[0], [image, target])
    return rank(both) == rank(image)


@dataclass(frozen=True)
class SupportSets:
    gamma: bool
    gamma1: bool
    R: bool
    Q: bool

    def to_json(self) -> dict[str, bool]:
        return {"gamma": self.gamma, "gamma1": self.gamma1, "R": self.R, "Q": self.Q}


def support_sets(S: FormSpace, A: FieldArray, v: FieldArray) -> SupportSets:
    return SupportSets(in_gamma(S, v), in_gamma1(S, A, v), in_R(S, A, v), in_Q(S, A, v))


def coefficient_identities(S: FormSpace, A: FieldArray, v: FieldArray, lam: FieldArray) -> dict[str, Any]:
    """
    c_1(A + l phi_v) = c_1(A) - l <v, v>
    c_2(A + l phi_v) = c_2(A) - l c_1(A) <v, v> - l <Av, v>
    with det(xI - A) = x^n + c_1 x^{n-1} + c_2 x^{n-2} + ...
    """
    if S.kind != "symplectic":
        raise PreconditionError("coefficient identities are checked on sp")
    F = S.field
    one, zero = F.one(), F.zero()

    def coeffs(M: FieldArray) -> list[FieldArray]:
        rows = [[M[i, j] for j in range(S.n)] for i in range(S.n)]
        c = berkowitz(rows, one, zero)
        return c + [zero] * (3 - len(c))

    base = coeffs(A)
    moved = coeffs(A + lam * phi(S, v))
    vv = S.pair(v, v)
    avv = S.pair(A @ v, v)
    c1_rhs = base[1] - lam * vv
    c2_rhs = base[2] - lam * base[1] * vv - lam * avv
    return {
        "c1": {"lhs": int(moved[1]), "rhs": int(c1_rhs), "holds": int(moved[1]) == int(c1_rhs)},
        "c2": {"lhs": int(moved[2]), "rhs": int(c2_rhs), "holds": int(moved[2]) == int(c2_rhs)},
    }


def block_support(S: FormSpace, b: SimpleBlock) -> Subspace:
    """
    The subspace of the block in which Q_A must lie:
      NonSplit          ker f(A)^{floor(d/2)}  (image A^{(d-1)/2} for o with f = x)
      EvenNilpotentO    image A^{d/2}
      OddNilpotentSp    image A^{(d+1)/2}
    """
    F = S.field
    A = b.operator
    if b.variant == NON_SPLIT:
        if S.kind == "symmetric" and b.f == x_poly(F):
            local = Subspace.image(F, matrix_power(F, A, (b.d - 1) // 2))
        else:
            local = Subspace.kernel(F, matrix_power(F, poly_at(F, b.f, A), b.d // 2))
    elif b.variant == EVEN_NILPOTENT_O:
        local = Subspace.image(F, matrix_power(F, A, b.d // 2))
    elif b.variant == ODD_NILPOTENT_SP:
        local = Subspace.image(F, matrix_power(F, A, (b.d + 1) // 2))
    else:
        raise PreconditionError(f"{b.variant} blocks carry no support subspace")
    return Subspace.span(F, S.n, b.basis @ local.columns)


@dataclass(frozen=True)
class PolarizationResult:
    k: int
    identity_holds: bool
    premise: bool
    conclusion: bool

    @property
    def implication_holds(self) -> bool:
        return not self.premise or self.conclusion


def polarization_check(S: FormSpace, A: FieldArray, v: FieldArray, k: int) -> list[PolarizationResult]:
    """
    With g_1 in {x^k, 1 + x^k}:
      o, u:  2 <A^{2k} v, v>   = Q(1 + x^k) - Q(x^k) - Q(1),   Q(g) = <g(A^2) v, g(A^2) v>
      sp:    2 <A^{2k+1} v, v> = P(1 + x^k) - P(x^k) - P(1),   P(g) = <A g(A^2) v, g(A^2) v>
      u also 2 w <A^{2k+1} v, v> through u = w A^{2k+1} v.
    The premise is that all three terms vanish.
    """
    F = S.field
    I = identity(F, S.n)
    A2k = matrix_power(F, A, 2 * k)
    out: list[PolarizationResult] = []

    if S.kind == "symplectic":
        P = lambda u: S.pair(A @ u, u)  # noqa: E731
        terms = [P((A2k + I) @ v), P(A2k @ v), P(v)]
        target = S.pair(A @ A2k @ v, v)
        rhs = terms[0] - terms[1] - terms[2]
        out.append(_result(k, target, rhs, terms))
        return out

    Q = lambda u: S.pair(u, u)  # noqa: E731
    terms = [Q((A2k + I) @ v), Q(A2k @ v), Q(v)]
    target = S.pair(A2k @ v, v)
    out.append(_result(k, target, terms[0] - terms[1] - terms[2], terms))
    if S.kind == "hermitian":
        w = F.omega
        U = w * (A @ A2k)
        terms = [Q((U + I) @ v), Q(U @ v), Q(v)]
        target = w * S.pair(A @ A2k @ v, v)
        out.append(_result(k, target, terms[0] - terms[1] - terms[2], terms))
    return out


def _result(k: int, target: FieldArray, rhs: FieldArray, terms: list[FieldArray]) -> PolarizationResult:
    return PolarizationResult(
        k=k,
        identity_holds=int(target + target) == int(rhs),
        premise=all(int(t) == 0 for t in terms),
        conclusion=int(target) == 0,
    )


def charpoly_unchanged(S: FormSpace, A: FieldArray, B: FieldArray) -> bool:
    return char_poly(S.field, A) == char_poly(S.field, B)
