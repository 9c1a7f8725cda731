from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

from clb.algebra.field import FieldArray, FieldDescriptor
from clb.algebra.poly import poly, poly_to_json
from clb.blocks.types import nilpotent_pair_gram
from clb.config import EnumerationBudget
from clb.errors import BudgetError
from clb.forms.space import FormSpace, standard_space
from clb.linalg.matrix import block_diag, inverse, zeros
from clb.orbits.groups import classical_order, enumerate_group
from clb.store.repo import write_instance, write_json
from clb.store.schema import FormSpaceSpec, ProblemInstance
from clb.verify.sampling import Sampler

log = logging.getLogger(__name__)

# (algebra group, field, dims) for the random part of the corpus
RANDOM_GRID: list[tuple[str, tuple[int, int], tuple[int, ...]]] = [
    ("O", (3, 1), (2, 3, 4)),
    ("O", (5, 1), (3, 5)),
    ("O", (7, 1), (4,)),
    ("SO", (3, 1), (3, 4)),
    ("SO", (5, 1), (5,)),
    ("Sp", (3, 1), (2, 4, 6)),
    ("Sp", (5, 1), (2, 4)),
    ("Sp", (7, 1), (4,)),
    ("U", (3, 2), (1, 2, 3)),
    ("U", (5, 2), (2,)),
]

# spaces whose group orders are enumerated and compared with the closed formulas
ORDER_CASES: list[tuple[str, tuple[int, int], int]] = [
    ("O", (3, 1), 1),
    ("O", (3, 1), 2),
    ("O", (3, 1), 3),
    ("SO", (3, 1), 3),
    ("Sp", (3, 1), 2),
    ("Sp", (5, 1), 2),
    ("U", (3, 2), 1),
    ("U", (3, 2), 2),
]


def _shift(F: FieldDescriptor, d: int) -> FieldArray:
    """The nilpotent Jordan block sending e_i to e_{i+1}."""
    J = zeros(F, d, d)
    for i in range(d - 1):
        J[i + 1, i] = 1
    return J


def _instance(name: str, command: str, S: FormSpace, A: FieldArray, **extra: Any) -> ProblemInstance:
    F = S.field
    return ProblemInstance(
        command=command,
        name=name,
        space=FormSpaceSpec.of(S),
        operator=F.encode(A),
        **extra,
    )


def _conjugate(S: FormSpace, A: FieldArray, sampler: Sampler) -> FieldArray:
    g = sampler.group()
    return g @ A @ inverse(S.field, g)


def canonical_instances(seed: int) -> list[ProblemInstance]:
    """Hand-built block types (each also in a randomly conjugated copy)."""
    out: list[ProblemInstance] = []
    F3 = FieldDescriptor(3)

    sp2 = standard_space(F3, "Sp", 2)
    nilp = F3.array([[0, 1], [0, 0]], 2)
    out.append(_instance("sp2_nilp", "classify", sp2, nilp))
    out.append(_instance("sp2_nilp_witness", "witness", sp2, nilp))
    rot = F3.array([[0, 1], [-1, 0]], 2)
    out.append(_instance("sp2_descend", "descend", sp2, rot, poly=poly_to_json(F3, poly(F3, [1, 0, 1]))))

    hyperbolic = FormSpace(F3, "symmetric", F3.array([[0, 1], [1, 0]], 2), "O")
    out.append(_instance("o2_split", "classify", hyperbolic, F3.array([[1, 0], [0, -1]], 2)))

    sampler_seed = seed
    for kind, group, epsilon, ds in (
        ("symmetric", "O", 1, (2, 4)),
        ("symplectic", "Sp", -1, (1, 3)),
    ):
        for d in ds:
            S = FormSpace(F3, kind, nilpotent_pair_gram(F3, d, epsilon), group)
            shift = block_diag(F3, [_shift(F3, d), _shift(F3, d)])
            tag = "o_even_nilpotent" if epsilon == 1 else "sp_odd_nilpotent"
            out.append(_instance(f"{tag}_d{d}", "classify", S, shift))
            sampler_seed += 1
            moved = _conjugate(S, shift, Sampler(S, sampler_seed))
            out.append(_instance(f"{tag}_d{d}_conj", "classify", S, moved))
    return out


def random_instances(seed: int) -> list[ProblemInstance]:
    out: list[ProblemInstance] = []
    for i, (group, (p, deg), dims) in enumerate(RANDOM_GRID):
        F = FieldDescriptor(p, deg)
        for n in dims:
            S = standard_space(F, group, n)
            sampler = Sampler(S, seed * 1000 + i * 10 + n)
            A = sampler.lie()
            stem = f"{group.lower()}{n}_{F.q}"
            out.append(_instance(f"{stem}_random", "classify", S, A))
            out.append(_instance(f"{stem}_random_witness", "witness", S, A))
    return out


def group_orders(budget: EnumerationBudget) -> list[dict[str, Any]]:
    rows = []
    for group, (p, deg), n in ORDER_CASES:
        S = standard_space(FieldDescriptor(p, deg), group, n)
        try:
            enumerated: int | None = enumerate_group(S, budget).order
        except BudgetError:
            enumerated = None
        rows.append({
            "group": group,
            "field": S.field.to_json(),
            "n": n,
            "enumerated": enumerated,
            "formula": classical_order(S),
        })
    return rows


def fixtures_generate(seed: int, out_dir: str | Path, budget: EnumerationBudget | None = None) -> list[Path]:
    """Write the instance corpus (and the group-order table) under `out_dir`; deterministic in `seed`."""
    budget = budget or EnumerationBudget()
    root = Path(out_dir)
    written: list[Path] = []
    for inst in canonical_instances(seed) + random_instances(seed):
        written.append(write_instance(root / f"{inst.name}.json", inst))
    written.append(write_json(root / "group_orders.json", {"seed": seed, "orders": group_orders(budget)}))
    log.info("wrote %d fixture files to %s", len(written), root)
    return written
