import numpy as np
import pytest

from clb.errors import InputError, MembershipError, PreconditionError
from clb.forms.isometry import canonical_basis, form_isometry
from clb.forms.space import (
    FormSpace,
    nonisotropic_vector,
    orthogonal_basis,
    phi,
    phi2,
    standard_gram,
    standard_space,
    symplectic_basis,
)
from clb.forms.twisted import (
    TwistedElement,
    apply_algebra,
    apply_group,
    compose,
    identity_element,
    in_twisted,
    invert,
    sigma_builder,
    twisted,
)
from clb.linalg.matrix import diag, equal, identity
from clb.verify.sampling import Sampler


def test_gram_validation(F3, F9):
    with pytest.raises(InputError):
        FormSpace(F3, "symmetric", F3.array([[1, 1], [0, 1]], 2), "O")
    with pytest.raises(InputError):
        FormSpace(F3, "symmetric", F3.array([[1, 1], [1, 1]], 2), "O")
    with pytest.raises(InputError):
        FormSpace(F3, "symplectic", identity(F3, 2), "Sp")
    with pytest.raises(InputError):
        FormSpace(F3, "hermitian", identity(F3, 2), "U")
    with pytest.raises(InputError):
        FormSpace(F9, "hermitian", F9.array([[1, [0, 1]], [[0, 1], 1]], 2), "U")
    with pytest.raises(InputError):
        FormSpace(F3, "symmetric", identity(F3, 2), "Sp")
    with pytest.raises(InputError):
        standard_space(F3, "Sp", 3)


@pytest.mark.parametrize(
    "group, p, deg, n, dim",
    [("O", 3, 1, 2, 1), ("O", 3, 1, 3, 3), ("SO", 5, 1, 4, 6), ("Sp", 3, 1, 4, 10), ("U", 3, 2, 2, 4), ("U", 5, 2, 3, 9)],
)
def test_lie_basis_dimension(group, p, deg, n, dim):
    from clb.algebra.field import FieldDescriptor

    S = standard_space(FieldDescriptor(p, deg), group, n)
    assert len(S.lie_basis) == dim
    for X in S.lie_basis:
        assert S.in_lie_algebra(X)


def test_lie_elements_enumerates_the_algebra(F3):
    S = standard_space(F3, "O", 2)
    elements = list(S.lie_elements())
    assert len(elements) == 3
    assert all(S.in_lie_algebra(A) for A in elements)
    assert len({tuple(int(x) for x in A.reshape(-1)) for A in elements}) == 3


def test_adjoint_moves_across_the_pairing(F9):
    S = standard_space(F9, "U", 2)
    s = Sampler(S, 4)
    for _ in range(5):
        A, u, v = s.matrix(), s.vector(), s.vector()
        assert S.pair(A @ u, v) == S.pair(u, S.adjoint(A) @ v)


def test_require_lie(F3):
    S = standard_space(F3, "Sp", 2)
    with pytest.raises(MembershipError):
        S.require_lie(identity(F3, 2))


def test_phi(F5):
    S = standard_space(F5, "O", 3)
    s = Sampler(S, 1)
    u, v = s.vector(), s.vector()
    assert equal(phi(S, v) @ u, S.pair(u, v) * v)


def test_orthogonal_and_symplectic_bases(F3, F9):
    S = standard_space(F3, "O", 3)
    G = S.restrict(orthogonal_basis(S))
    off = G - diag(F3, [G[i, i] for i in range(3)])
    assert not off.any() and all(int(G[i, i]) for i in range(3))

    H = FormSpace(F9, "hermitian", F9.array([[0, 1], [1, 0]], 2), "U")
    G = H.restrict(orthogonal_basis(H))
    assert int(G[0, 1]) == 0 and int(G[1, 0]) == 0

    B = F3.array([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]], 2)
    P = FormSpace(F3, "symplectic", B, "Sp")
    assert equal(P.restrict(symplectic_basis(P)), standard_gram(F3, "symplectic", 4))
    with pytest.raises(PreconditionError):
        orthogonal_basis(P)


def test_form_isometry(F3):
    one = FormSpace(F3, "symmetric", diag(F3, [1, 1]), "O")
    two = FormSpace(F3, "symmetric", diag(F3, [2, 2]), "O")
    mixed = FormSpace(F3, "symmetric", diag(F3, [1, 2]), "O")
    P = form_isometry(one, two)
    assert P is not None
    assert equal(P.T @ two.gram @ P, one.gram)
    assert form_isometry(one, mixed) is None
    _, C = canonical_basis(two)
    assert equal(C, diag(F3, [1, 1]))


def test_sigma_builder_lands_in_the_twisted_coset(F3, F5, F9):
    for S in (
        standard_space(F3, "O", 3),
        standard_space(F5, "SO", 2),
        standard_space(F5, "SO", 3),
        standard_space(F3, "SO", 4),
        standard_space(F9, "U", 2),
    ):
        s = sigma_builder(S)
        assert s.delta == -1
        assert in_twisted(S, s)
    with pytest.raises(PreconditionError):
        sigma_builder(standard_space(F3, "Sp", 2))


def test_twisted_composition(F9):
    S = standard_space(F9, "U", 2)
    s = Sampler(S, 2)
    t = s.twisted()
    g = s.group()
    assert in_twisted(S, t)
    tt = compose(S, t, t)
    assert tt.delta == 1 and not tt.conjugate
    assert S.in_group(tt.matrix)
    assert compose(S, t, invert(S, t)) == identity_element(S)
    A = s.lie()
    assert S.in_lie_algebra(apply_algebra(S, t, A))
    assert S.in_group(apply_group(S, t, g))


def test_twisted_element_validation(F3, F9):
    S = standard_space(F3, "O", 2)
    with pytest.raises(InputError):
        twisted(S, identity(F3, 2), 2)
    assert not in_twisted(S, TwistedElement(F3.array([[1, 1], [0, 1]], 2), -1))
    t = twisted(standard_space(F9, "U", 1), identity(F9, 1), -1)
    assert t.conjugate
    assert TwistedElement.from_json(F9, t.to_json(F9)) == t
    assert np.array_equal(t.matrix, identity(F9, 1))


@pytest.mark.parametrize("group, field, n", [("O", (5, 1), 3), ("Sp", (5, 1), 4), ("U", (3, 2), 2)])
def test_adjoint_is_an_involutive_anti_automorphism(group, field, n):
    from clb.algebra.field import FieldDescriptor

    S = standard_space(FieldDescriptor(*field), group, n)
    s = Sampler(S, 21)
    for _ in range(10):
        A, B = s.matrix(), s.matrix()
        assert equal(S.adjoint(A @ B), S.adjoint(B) @ S.adjoint(A))
        assert equal(S.adjoint(S.adjoint(A)), A)


def test_adjoint_on_the_hyperbolic_plane(F3):
    S = FormSpace(F3, "symmetric", F3.array([[0, 1], [1, 0]], 2), "O")
    assert equal(S.adjoint(diag(F3, [1, 2])), diag(F3, [2, 1]))
    assert S.in_lie_algebra(diag(F3, [1, -1]))


def test_nonisotropic_vector(F3):
    hyperbolic = FormSpace(F3, "symmetric", F3.array([[0, 1], [1, 0]], 2), "O")
    v = nonisotropic_vector(hyperbolic)
    assert v.tolist() == [1, 1]
    assert int(hyperbolic.pair(v, v)) == 2
    assert nonisotropic_vector(standard_space(F3, "O", 3)).tolist() == [1, 0, 0]
    with pytest.raises(PreconditionError, match="all vectors isotropic"):
        nonisotropic_vector(standard_space(F3, "Sp", 2))


def test_phi_examples(F3):
    S = FormSpace(F3, "symmetric", identity(F3, 2), "O")
    e1, e2 = F3.GF([1, 0]), F3.GF([0, 1])
    assert equal(phi(S, e1), F3.array([[1, 0], [0, 0]], 2))
    assert equal(phi2(S, e1, e2), F3.array([[0, 1], [0, 0]], 2))
    J = standard_space(F3, "Sp", 2)
    assert equal(phi(J, e1), F3.array([[0, -1], [0, 0]], 2))
    assert J.in_lie_algebra(phi(J, e2))


def test_symplectic_forms_of_opposite_sign_are_isometric(F3):
    J = standard_space(F3, "Sp", 2)
    minus = FormSpace(F3, "symplectic", -J.gram, "Sp")
    P = form_isometry(J, minus)
    assert P is not None
    assert equal(P.T @ minus.gram @ P, J.gram)
    same = form_isometry(J, J)
    assert same is not None and equal(same.T @ J.gram @ same, J.gram)
