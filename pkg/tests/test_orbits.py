import pytest

from clb.algebra.field import FieldDescriptor
from clb.config import EnumerationBudget
from clb.errors import BudgetError, InputError, PreconditionError
from clb.forms.space import standard_space
from clb.forms.twisted import in_twisted, sigma_builder
from clb.linalg.matrix import identity
from clb.orbits.groups import all_vectors, classical_order, enumerate_group
from clb.orbits.orbits import HEADER, check_pair_sigma, check_twisted_stability, orbits, preserves_orbit
from clb.orbits.union_find import UnionFind, find_orbits
from clb.witness.witness import witness_global


def test_union_find():
    uf = UnionFind(6)
    uf.union(0, 3)
    uf.union(3, 5)
    uf.union_permutation([1, 0, 2, 3, 4, 5])
    assert uf.find(5) == uf.find(0)
    assert uf.find(1) == uf.find(0)
    assert uf.find(2) != uf.find(0)
    assert len(uf) == 3
    assert uf.size[uf.find(0)] == 4
    assert find_orbits([[1, 0, 2, 3], [0, 1, 3, 2]], 4) == [[0, 1], [2, 3]]
    assert find_orbits([], 3) == [[0], [1], [2]]


def test_all_vectors_are_lexicographic(F3):
    X = all_vectors(F3, 2)
    assert X.shape == (9, 2)
    assert X[1].tolist() == [0, 1] and X[3].tolist() == [1, 0]


@pytest.mark.parametrize(
    "group, field, n, order",
    [
        ("O", (3, 1), 1, 2),
        ("O", (3, 1), 2, 4),
        ("O", (3, 1), 3, 48),
        ("SO", (3, 1), 3, 24),
        ("Sp", (3, 1), 2, 24),
        ("Sp", (5, 1), 2, 120),
        ("U", (3, 2), 1, 4),
        ("U", (3, 2), 2, 96),
    ],
)
def test_group_orders(group, field, n, order):
    S = standard_space(FieldDescriptor(*field), group, n)
    G = enumerate_group(S)
    assert G.order == order == classical_order(S)
    assert len(G.twisted_coset) == order
    assert all(S.in_group(g) for g in G.elements)
    assert all(in_twisted(S, t) for t in G.twisted_coset[:10])


def test_enumerated_group_is_closed(F3):
    G = enumerate_group(standard_space(F3, "Sp", 2))
    assert G.is_closed()
    assert G.contains(identity(F3, 2))
    assert G.index_of(G.elements[5]) == 5


def test_enumeration_budget(F3, F5):
    with pytest.raises(BudgetError, match="max_dim"):
        enumerate_group(standard_space(F3, "O", 4))
    with pytest.raises(BudgetError, match="max_q"):
        enumerate_group(standard_space(F5, "O", 2), EnumerationBudget(max_q=3))
    with pytest.raises(BudgetError, match="max_dim_hermitian"):
        enumerate_group(standard_space(FieldDescriptor(3, 2), "U", 3))


def test_o1_on_group_times_vector(F3):
    report = orbits(enumerate_group(standard_space(F3, "O", 1)), "GxV")
    assert report.group_order == 2
    assert report.points == 6
    assert sorted(o.size for o in report.orbits) == [1, 1, 2, 2]
    assert check_twisted_stability(report)
    assert report.all_stable
    assert report.to_json()["header"] == HEADER


def test_o1_on_algebra_times_vector(F3):
    report = orbits(enumerate_group(standard_space(F3, "O", 1)), "gxV")
    assert report.points == 3
    assert [o.size for o in report.orbits] == [1, 2]
    assert report.orbits[0].representative == {"A": [[[0, 0]]], "v": [[0, 0]]}


def test_sp2_algebra_times_vector_is_twisted_stable(F3):
    report = orbits(enumerate_group(standard_space(F3, "Sp", 2)), "gxV")
    assert report.points == 243
    assert sum(o.size for o in report.orbits) == 243
    assert all(24 % o.size == 0 for o in report.orbits)
    assert report.all_stable is None
    assert check_twisted_stability(report)
    assert all(o.witness is not None for o in report.orbits)


@pytest.mark.parametrize("group, n, space", [("O", 2, "g"), ("O", 3, "G"), ("O", 2, "gxV"), ("O", 2, "GxV"), ("U", 1, "GxV"), ("U", 2, "g")])
def test_twisted_stability_on_small_spaces(group, n, space):
    p, deg = (3, 2) if group == "U" else (3, 1)
    report = orbits(enumerate_group(standard_space(FieldDescriptor(p, deg), group, n)), space)
    assert check_twisted_stability(report)


def test_orbit_space_and_point_budget(F3):
    G = enumerate_group(standard_space(F3, "Sp", 2))
    with pytest.raises(InputError):
        orbits(G, "VxV")
    with pytest.raises(BudgetError, match="max_points"):
        orbits(G, "gxV", EnumerationBudget(max_points=100))


def test_preserves_orbit(F3):
    S = standard_space(F3, "O", 2)
    report = orbits(enumerate_group(S), "gxV")
    A = S.lie_basis[0]
    v = F3.GF([1, 0])
    assert preserves_orbit(report, sigma_builder(S), [A, v])


@pytest.mark.parametrize("group, n", [("Sp", 2), ("O", 3), ("SO", 3)])
def test_witness_keeps_every_lie_point_in_its_orbit(F3, group, n):
    S = standard_space(F3, group, n)
    report = orbits(enumerate_group(S), "gxV")
    origin = F3.GF([0] * n)
    seen = 0
    for A in S.lie_elements():
        W = witness_global(S, A)
        assert W.ok
        assert W.element.delta == -1
        assert preserves_orbit(report, W.element, [A, origin])
        seen += 1
    assert seen == 3 ** len(S.lie_basis)


@pytest.mark.parametrize("group, n", [("O", 1), ("O", 2)])
def test_pair_sigma(F3, group, n):
    report = check_pair_sigma(F3, group, n)
    assert report.space == "pair"
    assert report.all_stable
    assert all(o.witness is not None and "sigma" in o.witness for o in report.orbits)


def test_pair_sigma_unitary():
    report = check_pair_sigma(FieldDescriptor(3, 2), "U", 1)
    assert report.group_order == 4
    assert report.points == 96
    assert report.all_stable


def test_pair_sigma_rejects(F3):
    with pytest.raises(PreconditionError):
        check_pair_sigma(F3, "Sp", 2)
    with pytest.raises(InputError):
        check_pair_sigma(F3, "O", 0)
