"""Hypothesis strategies for random normal forms and the checks run on them."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from closedgeo import (
    GeodesicModel,
    NormalFormData,
    QuadraticRatio,
    QuasiPeriodConfig,
    RationalRatio,
    Surd,
    analytical_period,
    find_quasi_period,
    index_iterate,
    mean_index,
    nullity_iterate,
    verify_bott,
    verify_quasi_monotonicity,
)
from closedgeo.index_engine import deviation_bound, has_nonnegative_omega_indices

# -- random valid models -------------------------------------------------------


@st.composite
def rational_ratios(draw, max_den: int = 30):
    den = draw(st.integers(3, max_den))
    num = draw(st.integers(1, den - 1))
    x = RationalRatio(num, den)
    if x.value == Fraction(1, 2):
        x = RationalRatio(1, den)
    return x


@st.composite
def quadratic_ratios(draw):
    D = draw(st.sampled_from([2, 3, 5, 7]))
    c = draw(st.integers(1, 12))
    b = draw(st.integers(-3, 3).filter(bool))
    # pick a so that (a + b*sqrt(D))/c lands in (0, 1)
    base = -Surd(0, {D: b}).floor()
    a = base + draw(st.integers(0, c - 1))
    x = QuadraticRatio(a, b, c, D)
    v = Surd.of(x)
    if not (0 < v < 1):
        x = QuadraticRatio(-1, 1, 2, 5)
    return x


def angles(rational_weight: int = 3):
    return st.one_of(*([rational_ratios()] * rational_weight), quadratic_ratios())


def _irrational_first(xs):
    return tuple(sorted(xs, key=lambda x: x.is_rational))


@st.composite
def valid_models(draw, max_irrational: int = 2, positive_mean: bool = False, geodesic: bool = False):
    """Models passing validate_model.

    ``geodesic`` raises i(c) in steps of 2 until every omega-index is
    nonnegative, as it is for any closed geodesic; ``positive_mean`` does the
    same until the mean index is positive.
    """
    small = st.integers(0, 1)
    rot = draw(st.lists(angles(), max_size=3))
    irr = [x for x in rot if not x.is_rational][:max_irrational]
    rot = _irrational_first(irr + [x for x in rot if x.is_rational])
    nontrivial = _irrational_first(draw(st.lists(angles(), max_size=1)))
    trivial = _irrational_first(draw(st.lists(angles(), max_size=1)))
    counts = dict(
        p_minus=draw(small), p_zero=draw(small), p_plus=draw(small),
        q_minus=draw(small), q_zero=draw(small), q_plus=draw(small),
        h_plus=draw(small), h_minus=draw(small),
    )
    nf = NormalFormData(0, **counts, rotations=rot, nontrivial_pairs=nontrivial, trivial_pairs=trivial)
    half = nf.block_dimension()
    if half == 0:
        nf = NormalFormData(1, h_plus=1)
        half = 1
    else:
        nf = NormalFormData(half, **counts, rotations=rot, nontrivial_pairs=nontrivial, trivial_pairs=trivial)
    index = nf.parity_count() % 2 + 2 * draw(st.integers(0, 3))
    model = GeodesicModel(half + 1, index, nf)
    while (geodesic and not has_nonnegative_omega_indices(model)) or (
        positive_mean and mean_index(model).sign() <= 0
    ):
        model = GeodesicModel(model.dim_M, model.initial_index + 2, nf)
    return model


# -- checks shared by the property tests and the acceptance run ----------------

MAX_M = 200


def check_parity(model, max_m=MAX_M):
    i1, i2 = index_iterate(model, 1), index_iterate(model, 2)
    for m in range(1, max_m + 1):
        ref = i1 if m % 2 else i2
        assert (index_iterate(model, m) - ref) % 2 == 0, f"parity breaks at m={m}"


def check_bott(model, max_m=MAX_M):
    rep = verify_bott(model, max_m)
    assert rep.passed, str(rep)


def brute_force_period(model, window):
    """Smallest j meeting the defining conditions of the analytical period on [1, window]."""
    nus = [nullity_iterate(model, m) for m in range(1, window + 1)]
    top = max(nus)
    for j in range(1, window + 1):
        if nus[j - 1] != top:
            continue
        if all((index_iterate(model, m + j) - index_iterate(model, m)) % 2 == 0 for m in range(1, window + 1)):
            return j
    return None


def check_period(model, max_m=MAX_M):
    n = analytical_period(model, verify=False)
    assert all(nullity_iterate(model, m + n) == nullity_iterate(model, m) for m in range(1, max_m + 1))
    assert brute_force_period(model, max(2 * n + 4, 60)) == n


def check_deviation(model, max_m=MAX_M):
    mean, bound = mean_index(model), deviation_bound(model)
    for m in range(1, max_m + 1):
        gap = mean * m - index_iterate(model, m)
        assert abs(gap) <= bound, f"|i(c^{m}) - m*mean| = {abs(gap)} > {bound}"


def check_growth(model):
    res = find_quasi_period(model, QuasiPeriodConfig())
    rep = verify_quasi_monotonicity(model, res)
    assert rep.passed, f"T={res.T}: {rep}"
    return res
