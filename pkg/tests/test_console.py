import io

from rich.console import Console

from clb import console
from clb.blocks.stages import classify
from clb.config import EnumerationBudget
from clb.forms.space import standard_space
from clb.orbits.groups import enumerate_group
from clb.orbits.orbits import HEADER, check_twisted_stability, orbits
from clb.verify.suites import run_suite
from clb.witness.witness import witness_global


def _capture():
    return Console(file=io.StringIO(), width=160, record=True)


def test_tables_render(sp2, F3):
    A = F3.array([[0, 1], [0, 0]], 2)
    D = classify(sp2, A)
    c = _capture()
    console.show_blocks(D.to_json(), console=c)
    console.show_witness(witness_global(sp2, A, D).to_json(F3), console=c)
    console.show_suite(run_suite("coeffs", F3, "sp", 2, trials=3, seed=0).to_json(), console=c)
    console.show_descent({"degree": 2, "rank": 1, "centralizer_order": 4}, console=c)
    console.show_fixtures(["a.json", "b.json"], console=c)
    text = c.export_text()
    assert "blocks" in text and "anti_commutes" in text
    assert "coeffs" in text and "centralizer_order" in text and "b.json" in text


def test_orbit_panel(F3):
    S = standard_space(F3, "O", 1)
    budget = EnumerationBudget()
    rep = orbits(enumerate_group(S, budget), "GxV", budget)
    assert check_twisted_stability(rep)
    c = _capture()
    console.show_orbits(rep.to_json(), console=c, limit=2)
    text = c.export_text()
    assert "GxV orbits" in text
    assert HEADER in text
