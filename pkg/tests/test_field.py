import pytest

from clb.algebra.field import FieldDescriptor, least_nonresidue
from clb.errors import InputError


def test_parse_accepts_prime_pair_and_square():
    assert FieldDescriptor.parse("3") == FieldDescriptor(3, 1)
    assert FieldDescriptor.parse("9") == FieldDescriptor(3, 2)
    assert FieldDescriptor.parse("5,2") == FieldDescriptor(5, 2)
    assert FieldDescriptor.parse(" 7 ") == FieldDescriptor(7, 1)


@pytest.mark.parametrize("text", ["2", "4", "8", "27", "x", "3,3", ""])
def test_parse_rejects(text):
    with pytest.raises(InputError):
        FieldDescriptor.parse(text)


def test_even_characteristic_rejected():
    with pytest.raises(InputError):
        FieldDescriptor(2)


def test_omega_squares_to_least_nonresidue(F9):
    assert least_nonresidue(3) == 2
    assert least_nonresidue(7) == 3
    assert int(F9.omega) == 3
    assert F9.omega**2 == F9.GF(2)


def test_conjugation_negates_omega_part(F9):
    x = F9.scalar(1, 1)
    assert F9.conj(x) == F9.scalar(1, 2)
    assert F9.conj(F9.conj(x)) == x
    for z in F9.fixed_elements():
        assert F9.conj(z) == z


def test_trace_zero_elements(F9):
    zs = F9.trace_zero_elements()
    assert [int(z) for z in zs] == [0, 3, 6]
    for z in zs:
        assert F9.conj(z) == -z


def test_prime_field_rejects_omega_component(F3):
    with pytest.raises(InputError):
        F3.scalar(0, 1)
    with pytest.raises(InputError):
        F3.array([[1, [0, 1]]], 2)


def test_encode_writes_pairs(F9):
    A = F9.array([[1, [0, 1]], [[2, 2], 0]], 2)
    assert F9.encode(A) == [[[1, 0], [0, 1]], [[2, 2], [0, 0]]]


def test_prime_coordinates(F9):
    A = F9.array([[[1, 2], 0], [[0, 1], 2]], 2)
    coords = F9.to_prime(A)
    assert [int(c) for c in coords] == [1, 2, 0, 0, 0, 1, 2, 0]
    assert F9.from_prime(coords, (2, 2)).tolist() == A.tolist()


def test_bad_scalar_shape(F3):
    with pytest.raises(InputError):
        F3.array([[1, 2, 3]], 1)
