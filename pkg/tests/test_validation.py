import pytest

from bargmann_ritz.closed_forms import FormulaId
from bargmann_ritz.validation import CLEAN_TOL, validate_all, validate_formula


@pytest.fixture(scope="module")
def ledger():
    return validate_all(0.1)


def test_every_formula_covered(ledger):
    assert {r.formula for r in ledger} == {f.value for f in FormulaId}


def test_unflagged_rows_clean(ledger):
    dirty = [r for r in ledger if not r.flagged and not r.clean]
    assert not dirty, [(r.formula, r.quantity, r.abs_dev) for r in dirty]


def test_every_row_has_both_sides(ledger):
    for r in ledger:
        d = r.to_dict()
        assert isinstance(d["paper_value"], float) and isinstance(d["oracle_value"], float)


def test_squeezed_rows_deviate(ledger):
    rows = [r for r in ledger if r.formula == "SqueezedQuartic" and r.params.get("alpha")
            and r.quantity in ("x2", "energy")]
    assert len(rows) == 2
    for r in rows:
        assert r.flagged and r.stable and r.abs_dev > 1e-3


def test_coherent_x3_row(ledger):
    (r,) = [r for r in ledger if r.formula == "DisplacedCoherentCubicQuartic" and r.quantity == "x3"]
    g = r.params["gamma"]
    assert r.flagged and r.abs_dev == pytest.approx(1.5 * 2**0.5 * abs(g), rel=1e-10)


def test_validate_formula_examples():
    r = validate_formula(FormulaId.NormSquaredPaper, {"alpha": 0.25})
    assert r.abs_dev < CLEAN_TOL and not r.flagged
    r = validate_formula(FormulaId.MonomialQuartic, {"n": 1, "quantity": "x4"})
    assert r.abs_dev < CLEAN_TOL
    r = validate_formula(FormulaId.SqueezedQuartic, {"alpha": 0.2, "quantity": "x2"})
    assert r.flagged and r.abs_dev > 0.1


def test_anisotropy_rows(ledger):
    rows = {r.params["alpha"]: r for r in ledger if r.formula == "AnisotropyPaper"}
    assert rows[0.0].clean and not rows[0.0].flagged
    assert rows[0.2].flagged and rows[0.2].abs_dev > 0.1
