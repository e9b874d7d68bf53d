import pytest

from closedgeo import FIXTURES, NormalFormData, RationalRatio, QuadraticRatio, ValidationError
from closedgeo.normal_form import index_parity, initial_nullity, require_valid, validate_model

A, B, C, D = (FIXTURES[k] for k in "ABCD")


@pytest.mark.parametrize("name", "ABCD")
def test_fixtures_are_valid(name):
    assert validate_model(FIXTURES[name]) == []


def test_parity_violation():
    bad = FIXTURES["A"].__class__(3, 2, A.nf)
    report = validate_model(bad)
    assert len(report) == 1 and "parity" in report[0]


def test_dimension_budget_violation():
    report = validate_model(A.with_nf(p_plus=2))
    assert any("dimension budget" in line for line in report)
    with pytest.raises(ValidationError) as info:
        require_valid(A.with_nf(p_plus=2))
    assert info.value.report == report


def test_angle_range_and_order():
    half = RationalRatio(1, 2)
    assert any("1/2" in e for e in NormalFormData(1, rotations=(half,)).errors())
    out_of_range = NormalFormData(1, rotations=(RationalRatio(4, 3),)).errors()
    assert any("(0, 1)" in e for e in out_of_range)
    misordered = NormalFormData(2, rotations=(RationalRatio(1, 3), QuadraticRatio(-1, 1, 2, 5)))
    assert any("precede" in e for e in misordered.errors())


def test_h_minus_at_most_one():
    assert any("h_minus" in e for e in NormalFormData(2, h_minus=2).errors())


def test_initial_nullity():
    assert initial_nullity(A.nf) == 1
    assert initial_nullity(B.nf) == 0
    assert initial_nullity(NormalFormData(2, p_zero=2)) == 4


def test_index_parity():
    assert index_parity(A.nf) == "odd"
    assert index_parity(C.nf) == "even"
    assert index_parity(D.nf) == "odd"


def test_block_counts():
    nf = B.nf
    assert (nf.r, nf.k, nf.r_star, nf.k_star) == (1, 1, 0, 0)
    assert A.lam == 0 and C.lam == 2
