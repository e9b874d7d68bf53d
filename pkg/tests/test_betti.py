from fractions import Fraction

import pytest

from closedgeo import (
    ManifoldClass,
    RangeClaimViolated,
    alternating_sum_check,
    betti_number,
    coefficient_B,
    epsilon_term,
    omega_member,
)
from closedgeo.betti import betti_even_sphere, epsilon_even, even_closed_form


def test_manifold_class_rules():
    with pytest.raises(ValueError):
        ManifoldClass(3, 2)
    with pytest.raises(ValueError):
        ManifoldClass(1, 1)
    assert ManifoldClass(4, 2).D == 10


@pytest.mark.parametrize("d, h, B", [(3, 1, 1), (2, 1, -1), (2, 2, Fraction(-3, 2))])
def test_coefficient_B(d, h, B):
    assert coefficient_B(ManifoldClass(d, h)) == B


def test_betti_examples():
    assert betti_number(ManifoldClass(3, 1), 4) == 2
    assert betti_number(ManifoldClass(2, 2), 7) == 3
    for d, h in [(2, 1), (2, 3), (4, 2), (6, 5)]:
        mc = ManifoldClass(d, h)
        assert all(betti_number(mc, q) == 0 for q in range(0, 80, 2))


def test_omega_examples():
    assert omega_member(ManifoldClass(2, 2), 7)
    assert not omega_member(ManifoldClass(2, 2), 3)
    assert omega_member(ManifoldClass(4, 2), 13)


def test_corrected_omega_matches_sphere_table():
    for d in (2, 4, 6, 8):
        mc = ManifoldClass(d, 1)
        assert [betti_number(mc, q) for q in range(400)] == [betti_even_sphere(d, q) for q in range(400)]


def test_printed_omega_range_breaks_spheres():
    """Starting j at 1 leaves Omega empty for h=1 and loses the b_q = 2 entries."""
    mc = ManifoldClass(2, 1)
    assert any(betti_number(mc, q, j_from=1) != betti_even_sphere(2, q) for q in range(40))


def test_small_sums():
    rep = alternating_sum_check(ManifoldClass(3, 1), 4)
    assert rep.passed
    assert rep.data["rows"][-1][:2] == (4, 3)
    rep = alternating_sum_check(ManifoldClass(4, 2), 17)
    k, direct, closed, eps = rep.data["rows"][-1]
    assert (k, direct, closed, eps) == (17, 16, Fraction(16), Fraction(1, 5))
    assert even_closed_form(ManifoldClass(4, 2), 17) == Fraction(84, 5) - 1 + Fraction(1, 5)
    assert alternating_sum_check(ManifoldClass(2, 1), 3)["even sphere bound"].passed


def test_epsilon_examples():
    assert epsilon_term(ManifoldClass(3, 1), 4) == 0
    assert epsilon_term(ManifoldClass(4, 2), 17) == Fraction(1, 5)
    assert epsilon_term(ManifoldClass(2, 2), 5) == 0


def test_epsilon_range_violation_is_raised(monkeypatch):
    import closedgeo.betti as betti

    monkeypatch.setattr(betti, "epsilon_even", lambda mc, k: Fraction(1))
    with pytest.raises(RangeClaimViolated):
        betti.epsilon_term(ManifoldClass(4, 2), 17)


@pytest.mark.parametrize("d, h", [(2, 1), (2, 4), (4, 3), (6, 2), (3, 1), (9, 1)])
def test_closed_forms_medium_range(d, h):
    assert alternating_sum_check(ManifoldClass(d, h), 600).passed


def test_epsilon_even_is_periodic_in_D():
    mc = ManifoldClass(6, 3)
    assert all(epsilon_even(mc, k) == epsilon_even(mc, k + mc.D) for k in range(5, 100))
