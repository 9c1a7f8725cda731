import numpy as np
import pytest

from clb.algebra.poly import poly
from clb.errors import InconsistentSystemError, PreconditionError
from clb.linalg.canonical import (
    berkowitz,
    char_poly,
    generalized_eigenspaces,
    is_minimal_regular,
    is_regular,
    min_poly,
    rational_canonical_form,
    similarity_witness,
)
from clb.linalg.matrix import diag, equal, express, identity, inverse, kernel_basis, rank, solve
from clb.linalg.subspace import Subspace


def _random(F, n, seed):
    rng = np.random.default_rng(seed)
    return F.GF(rng.integers(0, F.q, size=(n, n)))


def test_kernel_and_rank(F5):
    A = F5.array([[1, 2, 3], [2, 4, 1], [3, 1, 4]], 2)
    K = kernel_basis(F5, A)
    assert rank(A) + K.shape[1] == 3
    assert not (A @ K).any()


def test_inverse(F5):
    A = F5.array([[1, 2], [3, 4]], 2)
    assert equal(A @ inverse(F5, A), identity(F5, 2))
    with pytest.raises(PreconditionError):
        inverse(F5, F5.array([[1, 2], [2, 4]], 2))


def test_solve_and_express(F3):
    A = F3.array([[1, 1], [0, 1]], 2)
    b = F3.GF([2, 1])
    x = solve(F3, A, b)
    assert equal(A @ x, b)
    with pytest.raises(InconsistentSystemError):
        solve(F3, F3.array([[1, 1], [1, 1]], 2), F3.GF([0, 1]))
    with pytest.raises(InconsistentSystemError):
        express(F3, F3.array([[1], [0]], 2), F3.GF([0, 1]))


def test_subspace_operations(F3):
    e1 = F3.GF([1, 0, 0])
    e2 = F3.GF([0, 1, 0])
    U = Subspace.span(F3, 3, e1)
    W = Subspace.span(F3, 3, F3.array([[1, 0], [1, 1], [0, 0]], 2))
    assert W.contains(e1) and W.contains(e2)
    assert (U + W) == W
    assert U.intersect(W) == U
    assert W.contains_space(U)
    assert Subspace.kernel(F3, F3.array([[1, 0, 0]], 2)).dim == 2
    assert Subspace.image(F3, identity(F3, 3)) == Subspace.whole(F3, 3)


def test_char_and_min_poly(F3):
    A = diag(F3, [1, 1, 2])
    assert char_poly(F3, A) == poly(F3, [1, 2, 2, 1])
    assert min_poly(F3, A) == poly(F3, [2, 0, 1])
    assert not is_regular(F3, A)
    J = F3.array([[1, 1], [0, 1]], 2)
    assert is_minimal_regular(F3, J)
    assert min_poly(F3, J) == char_poly(F3, J)


def test_berkowitz_agrees_with_char_poly(F5):
    for seed in range(5):
        A = _random(F5, 4, seed)
        rows = [[A[i, j] for j in range(4)] for i in range(4)]
        c = berkowitz(rows, F5.one(), F5.zero())
        assert [int(x) for x in c] == [int(x) for x in char_poly(F5, A).coeffs]


def test_generalized_eigenspaces_fill_the_space(F5):
    A = _random(F5, 4, 11)
    spaces = generalized_eigenspaces(F5, A)
    assert sum(es.space.dim for es in spaces) == 4
    for es in spaces:
        assert es.space.dim == int(es.f.degree) * es.multiplicity
        assert es.space.is_invariant(A)


def test_rational_canonical_form(F3):
    for seed in range(4):
        A = _random(F3, 4, seed)
        rf = rational_canonical_form(F3, A)
        P = rf.change_of_basis
        assert equal(P @ A @ inverse(F3, P), rf.matrix())


def test_similarity_witness(F5):
    A = _random(F5, 3, 3)
    P = similarity_witness(F5, A, A.T)
    assert P is not None
    assert equal(P @ A @ inverse(F5, P), A.T)
    assert similarity_witness(F5, diag(F5, [1, 2]), diag(F5, [1, 1])) is None


def _invertible(F, n, seed):
    while True:
        P = _random(F, n, seed)
        if rank(P) == n:
            return P
        seed += 1000


@pytest.mark.parametrize("p", [3, 5])
def test_every_matrix_is_similar_to_its_transpose(p):
    from clb.algebra.field import FieldDescriptor

    F = FieldDescriptor(p)
    for seed in range(12):
        n = 1 + seed % 5
        A = _random(F, n, 100 * p + seed)
        P = similarity_witness(F, A, A.T)
        assert P is not None
        assert equal(P @ A @ inverse(F, P), A.T)


def test_rational_form_survives_conjugation(F5):
    for seed in range(8):
        n = 2 + seed % 3
        A = _random(F5, n, seed)
        P = _invertible(F5, n, 50 + seed)
        B = P @ A @ inverse(F5, P)
        ra = rational_canonical_form(F5, A)
        rb = rational_canonical_form(F5, B)
        assert ra.invariant() == rb.invariant()
        assert equal(ra.matrix(), rb.matrix())
