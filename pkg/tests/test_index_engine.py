from fractions import Fraction

import pytest

from closedgeo import (
    FIXTURES,
    GeodesicModel,
    MeanIndexNotPositive,
    NormalFormData,
    Surd,
    analytical_period,
    index_iterate,
    m_zero,
    mean_index,
    nullity_iterate,
    verify_bott,
)
from closedgeo.index_engine import deviation_bound, iterate_table

A, B, C, D = (FIXTURES[k] for k in "ABCD")


def test_model_A_table():
    assert iterate_table(A, 6) == [(1, 1, 1), (2, 1, 1), (3, 1, 3), (4, 3, 1), (5, 3, 1), (6, 3, 3)]


@pytest.mark.parametrize("model, m, expected", [(A, 4, 3), (A, 1, 1), (B, 8, 9)])
def test_index_examples(model, m, expected):
    assert index_iterate(model, m) == expected


def test_nullity_examples():
    assert nullity_iterate(A, 3) == 3
    assert nullity_iterate(A, 2) == 1
    assert all(nullity_iterate(B, m) == 0 for m in range(1, 60))


def test_first_iterate_reproduces_initial_data():
    for model in FIXTURES.values():
        assert index_iterate(model, 1) == model.initial_index


def test_rejects_m_zero():
    with pytest.raises(ValueError):
        index_iterate(A, 0)


def test_mean_index():
    assert mean_index(A) == Surd(Fraction(2, 3))
    assert mean_index(B) == Surd(-1, {5: 1})
    assert mean_index(C) == 2
    assert mean_index(D) == 1


@pytest.mark.parametrize("name, n", [("A", 3), ("B", 1), ("C", 1), ("D", 2)])
def test_analytical_period(name, n):
    assert analytical_period(FIXTURES[name]) == n


@pytest.mark.parametrize("name, m0", [("A", 3), ("B", 4), ("C", 1), ("D", 1)])
def test_m_zero(name, m0):
    assert m_zero(FIXTURES[name]) == m0


def brute_m_zero(model, horizon=400):
    target = model.dim_M + 4 * model.nf.k
    fails = [s for s in range(1, horizon) if index_iterate(model, s) < target]
    return max([1] + fails)


@pytest.mark.parametrize("name", "ABCD")
def test_m_zero_matches_brute_force(name):
    assert m_zero(FIXTURES[name]) == brute_m_zero(FIXTURES[name])


def test_m_zero_needs_positive_mean():
    flat = GeodesicModel(2, 0, NormalFormData(1, p_plus=1))
    with pytest.raises(MeanIndexNotPositive):
        m_zero(flat)


@pytest.mark.parametrize("name", "ABC")
def test_verify_bott(name):
    assert verify_bott(FIXTURES[name], 50).passed


def test_deviation_bound_on_fixtures():
    for model in FIXTURES.values():
        mean, bound = mean_index(model), deviation_bound(model)
        for m in range(1, 300):
            assert abs(mean * m - index_iterate(model, m)) <= bound


def test_omega_index_profile_of_fixtures():
    from closedgeo.index_engine import min_omega_index, omega_index

    assert [omega_index(A, Fraction(j, 6)) for j in range(6)] == [1, 1, 0, 0, 0, 1]
    assert {name: min_omega_index(m) for name, m in FIXTURES.items()} == {"A": 0, "B": 1, "C": 2, "D": 1}
    with pytest.raises(ValueError):
        omega_index(A, 1)


def test_negative_omega_index_breaks_bott():
    from closedgeo.index_engine import has_nonnegative_omega_indices

    model = GeodesicModel(4, 1, NormalFormData(3, q_minus=1, q_zero=1, q_plus=1))
    assert not has_nonnegative_omega_indices(model)
    assert not verify_bott(model, 10).passed
    assert verify_bott(GeodesicModel(4, 3, model.nf), 50).passed
