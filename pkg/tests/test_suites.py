import pytest

from clb.algebra.field import FieldDescriptor
from clb.errors import InputError, PreconditionError
from clb.forms.space import standard_space
from clb.identities.support import in_R
from clb.verify.sampling import Sampler
from clb.verify.suites import SUITES, _r_vector, run_suite


@pytest.mark.parametrize(
    "suite, field, algebra, n, trials",
    [
        ("perturbation", (3, 1), "sp", 2, 30),
        ("perturbation", (3, 2), "u", 2, 10),
        ("qr", (3, 1), "o", 2, None),
        ("qr", (3, 1), "o", 3, None),
        ("qr", (3, 1), "sp", 2, None),
        ("qr", (5, 1), "sp", 4, 20),
        ("qr", (3, 2), "u", 2, 20),
        ("cayley", (3, 1), "sp", 2, 10),
        ("cayley", (5, 1), "o", 3, 10),
        ("cayley", (3, 2), "u", 2, 5),
        ("delta", (5, 1), "sp", 4, 5),
        ("delta", (5, 1), "o", 3, 5),
        ("delta", (3, 2), "u", 2, 5),
        ("rho", (5, 1), "sp", 2, 2),
        ("rho", (3, 2), "u", 2, 2),
        ("coeffs", (5, 1), "sp", 4, 20),
        ("blocks", (5, 1), "o", 3, 5),
        ("blocks", (3, 1), "sp", 4, 5),
        ("blocks", (3, 2), "u", 2, 5),
        ("blocks", (3, 1), "so", 4, 5),
    ],
)
def test_suite_passes(suite, field, algebra, n, trials):
    res = run_suite(suite, FieldDescriptor(*field), algebra, n, trials=trials, seed=1)
    assert res.instances > 0
    assert res.failures == []
    assert res.ok


def test_small_spaces_run_exhaustively(F3):
    res = run_suite("qr", F3, "o", 2)
    assert res.exhaustive
    assert res.instances == 3 * 9
    assert not run_suite("qr", F3, "o", 2, trials=5).exhaustive


def test_exhaustive_cayley_walks_the_whole_group(F3):
    res = run_suite("cayley", F3, "sp", 2, trials=None)
    assert res.exhaustive
    assert res.ok


def test_runs_are_deterministic_in_the_seed(F5):
    a = run_suite("blocks", F5, "sp", 2, trials=4, seed=7).to_json()
    b = run_suite("blocks", F5, "sp", 2, trials=4, seed=7).to_json()
    assert a == b
    assert list(a) == ["suite", "field", "algebra", "n", "seed", "exhaustive", "instances", "vacuous", "failures"]


def test_suite_rejections(F3):
    with pytest.raises(InputError):
        run_suite("nope", F3, "sp", 2)
    with pytest.raises(InputError):
        run_suite("qr", F3, "gl", 2)
    with pytest.raises(PreconditionError):
        run_suite("coeffs", F3, "o", 2, trials=1)
    assert set(SUITES) == {"perturbation", "qr", "cayley", "delta", "rho", "coeffs", "blocks"}


def test_r_vector_is_nonzero_or_absent(F3):
    S = standard_space(F3, "Sp", 2)
    sampler = Sampler(S, 0)
    nilpotent = F3.array([[0, 1], [0, 0]], 2)
    v = _r_vector(S, sampler, nilpotent)
    assert v is not None and any(int(x) for x in v)
    assert in_R(S, nilpotent, v)
    # x^2 + 1 is irreducible over F_3, so <Av, v> is anisotropic and R_A = {0}
    rotation = F3.array([[0, 1], [-1, 0]], 2)
    assert _r_vector(S, sampler, rotation) is None


def test_vacuous_draws_are_skipped_not_passed(F5):
    res = run_suite("delta", F5, "sp", 2, trials=30, seed=3)
    assert res.ok
    assert res.instances == (30 - res.vacuous) * F5.q
    assert res.to_json()["vacuous"] == res.vacuous
