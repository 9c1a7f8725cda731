import dataclasses

import pytest

from clb.algebra.field import FieldDescriptor
from clb.algebra.poly import poly, x_poly
from clb.blocks.stages import check_filtration_laws, classify, stage1_eigensplit, TYPE_B, SPLIT_PAIR
from clb.blocks.types import (
    EVEN_NILPOTENT_O,
    NON_SPLIT,
    ODD_NILPOTENT_SP,
    SPLIT,
    block_problems,
    nilpotent_pair_gram,
)
from clb.errors import MembershipError
from clb.forms.space import standard_space
from clb.linalg.matrix import identity, inverse, zeros
from clb.verify.fixtures import canonical_instances
from clb.verify.sampling import Sampler

EXPECTED = {
    "sp2_nilp": [(NON_SPLIT, 2)],
    "sp2_descend": [(NON_SPLIT, 1)],
    "o2_split": [(SPLIT, 1)],
    "o_even_nilpotent_d2": [(EVEN_NILPOTENT_O, 2)],
    "o_even_nilpotent_d4": [(EVEN_NILPOTENT_O, 4)],
    "sp_odd_nilpotent_d1": [(ODD_NILPOTENT_SP, 1)],
    "sp_odd_nilpotent_d3": [(ODD_NILPOTENT_SP, 3)],
}

RANDOM_SPACES = [
    ("O", (5, 1), 3),
    ("O", (7, 1), 4),
    ("SO", (3, 1), 4),
    ("Sp", (3, 1), 4),
    ("Sp", (5, 1), 2),
    ("U", (3, 2), 2),
    ("U", (3, 2), 3),
]


def _space(group, field, n):
    return standard_space(FieldDescriptor(*field), group, n)


@pytest.mark.parametrize("inst", [i for i in canonical_instances(0) if i.command != "witness"], ids=lambda i: i.name)
def test_canonical_block_types(inst):
    S = inst.form_space()
    A = inst.operator_matrix(S)
    D = classify(S, A)
    assert D.problems() == []
    name = inst.name.removesuffix("_conj")
    assert [(b.variant, b.d) for b in D.blocks] == EXPECTED[name]


def test_nilpotent_pair_gram_pattern(F3):
    G = nilpotent_pair_gram(F3, 1, -1)
    assert G.tolist() == [[0, 1], [2, 0]]
    G = nilpotent_pair_gram(F3, 2, 1)
    assert G.T.tolist() == G.tolist()


@pytest.mark.parametrize("group, field, n", RANDOM_SPACES)
def test_random_decompositions_are_valid(group, field, n):
    S = _space(group, field, n)
    s = Sampler(S, 17)
    for _ in range(4):
        A = s.lie()
        D = classify(S, A)
        assert D.problems() == []
        assert sum(b.dim for b in D.blocks) == S.n
        assert check_filtration_laws(S, A)


@pytest.mark.parametrize("group, field, n", RANDOM_SPACES)
def test_signature_is_a_conjugation_invariant(group, field, n):
    S = _space(group, field, n)
    s = Sampler(S, 5)
    F = S.field
    for _ in range(3):
        A = s.lie()
        g = s.group()
        moved = g @ A @ inverse(F, g)
        assert classify(S, A).signature() == classify(S, moved).signature()


def test_stage1_pairs_f_with_its_star(F3):
    inst = next(i for i in canonical_instances(0) if i.name == "o2_split")
    S = inst.form_space()
    summands = stage1_eigensplit(S, inst.operator_matrix(S))
    assert [s.tag for s in summands] == [SPLIT_PAIR]
    assert summands[0].partner is not None

    sp = standard_space(F3, "Sp", 2)
    rot = F3.array([[0, 1], [-1, 0]], 2)
    (only,) = stage1_eigensplit(sp, rot)
    assert only.tag == TYPE_B and only.f == poly(F3, [1, 0, 1])


def test_zero_operator(F5):
    S = standard_space(F5, "O", 3)
    D = classify(S, zeros(F5, 3, 3))
    assert all(b.f == x_poly(F5) and b.d == 1 for b in D.blocks)
    assert [b.variant for b in D.blocks] == [NON_SPLIT] * 3
    assert D.signature()[0]["count"] == 3


def test_classify_rejects_non_members(F3):
    S = standard_space(F3, "Sp", 2)
    with pytest.raises(MembershipError):
        classify(S, identity(F3, 2))


def test_block_problems_catch_a_relabelled_block():
    inst = next(i for i in canonical_instances(0) if i.name == "o2_split")
    S = inst.form_space()
    A = inst.operator_matrix(S)
    (b,) = classify(S, A).blocks
    assert block_problems(S, A, b) == []
    assert block_problems(S, A, dataclasses.replace(b, variant=NON_SPLIT))
    assert block_problems(S, A, dataclasses.replace(b, variant="Bogus")) == ["unknown variant 'Bogus'"]
