"""Morse index and nullity of iterates c^m computed from normal form data.

The iteration formulas are evaluated with exact ceilings of ``m*ratio``:

    i(c^m) = m*lam + 2*sum E(m*b_j) - r - p_- - p_0 - [m even](q_0 + q_+)
             + 2*sum_{rational nontrivial pairs} phi(m*a_j) - 2(r_* - k_*)
    nu(c^m) = nu(c) + [m even](q_- + 2q_0 + q_+) + 2*varsigma(m)

with ``lam = i(c) + p_- + p_0 - r``.  Using E(x) >= x, E(x) < x + 1 and
0 <= phi <= 1 in the first line gives, for every m,

    m*mean - C <= i(c^m) <= m*mean + r - p_- - p_0,
    C = r + p_- + p_0 + q_0 + q_+ + 2(r_* - k_*),

which is what :func:`m_zero` relies on to stop its scan.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import lcm

from .exact_numbers import Surd, phi_indicator, upper_E
from .normal_form import GeodesicModel, initial_nullity
from .report import Report


class MeanIndexNotPositive(ValueError):
    pass


def _check_m(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"iterate m must be a positive integer, got {m!r}")


def index_iterate(model: GeodesicModel, m: int) -> int:
    _check_m(m)
    nf = model.nf
    even = 1 if m % 2 == 0 else 0
    total = m * model.lam - nf.r - nf.p_minus - nf.p_zero
    total += 2 * sum(upper_E(m, x) for x in nf.rotations)
    total -= even * (nf.q_zero + nf.q_plus)
    total += 2 * sum(phi_indicator(m, x) for x in nf.nontrivial_pairs if x.is_rational)
    total -= 2 * (nf.r_star - nf.k_star)
    return total


def varsigma(model: GeodesicModel, m: int) -> int:
    # irrational ratios have phi == 1 for every m >= 1 and drop out
    return sum(1 - phi_indicator(m, x) for x in model.nf.rational_ratios())


def nullity_iterate(model: GeodesicModel, m: int) -> int:
    _check_m(m)
    nf = model.nf
    even = 1 if m % 2 == 0 else 0
    return (
        initial_nullity(nf)
        + even * (nf.q_minus + 2 * nf.q_zero + nf.q_plus)
        + 2 * varsigma(model, m)
    )


def iterate_table(model: GeodesicModel, max_m: int) -> list[tuple[int, int, int]]:
    return [(m, index_iterate(model, m), nullity_iterate(model, m)) for m in range(1, max_m + 1)]


def mean_index(model: GeodesicModel) -> Surd:
    """Exact mean index ``lam + 2*sum(rotation ratios)``."""
    total = Surd(model.lam)
    for x in model.nf.rotations:
        total = total + Surd.of(x) * 2
    return total


def lower_deviation_constant(model: GeodesicModel) -> int:
    """C with i(c^m) >= m*mean - C for all m."""
    nf = model.nf
    return nf.r + nf.p_minus + nf.p_zero + nf.q_zero + nf.q_plus + 2 * (nf.r_star - nf.k_star)


def deviation_bound(model: GeodesicModel) -> int:
    """Bound on |i(c^m) - m*mean| valid for every m."""
    nf = model.nf
    C = lower_deviation_constant(model)
    return C + nf.r + nf.p_minus + nf.p_zero + nf.q_zero + nf.q_plus + 2 * (nf.r_star - nf.k_star)


def _positive_lower_bound(x: Surd) -> Fraction:
    if x.sign() <= 0:
        raise MeanIndexNotPositive(f"mean index {x} is not positive")
    den = 16
    while True:
        lo = x.lower_bound(den)
        if lo > 0:
            return lo
        den *= 16


def _rational_lcm(model: GeodesicModel) -> int:
    return lcm(1, *(x.den for x in model.nf.rational_ratios()))


def _period_candidates(model: GeodesicModel, window: int) -> list[int]:
    """Every j <= window satisfying the defining conditions on [1, window]."""
    nus = [nullity_iterate(model, m) for m in range(1, window + 1)]
    idx = [index_iterate(model, m) for m in range(1, 2 * window + 1)]
    top = max(nus)
    return [
        j
        for j in range(1, window + 1)
        if nus[j - 1] == top
        and all((idx[m + j - 1] - idx[m - 1]) % 2 == 0 for m in range(1, window + 1))
    ]


def analytical_period(model: GeodesicModel, verify: bool = True) -> int:
    """Smallest j with maximal nullity at j and even index shifts by j.

    Maximal nullity needs every rational ratio to hit an integer at j and,
    when eigenvalue -1 blocks contribute, j even.  An odd shift changes the
    index parity by ``lam + q_0 + q_+``.
    """
    nf = model.nf
    n0 = _rational_lcm(model)
    n = n0
    if n % 2 == 1:
        if nf.q_minus + 2 * nf.q_zero + nf.q_plus > 0 or (model.lam + nf.q_zero + nf.q_plus) % 2:
            n = 2 * n0
    if verify:
        found = _period_candidates(model, 2 * n0 + 4)
        if not found or found[0] != n:
            raise AssertionError(f"analytical period {n} disagrees with the definition ({found[:1]})")
    return n


def m_zero(model: GeodesicModel) -> int:
    """min{m : i(c^{j+m}) >= dim_M + 4k for all j >= 1}."""
    mean = mean_index(model)
    lo = _positive_lower_bound(mean)
    target = model.dim_M + 4 * model.nf.k
    C = lower_deviation_constant(model)
    # i(c^s) >= s*lo - C >= target once s >= (target + C)/lo
    horizon = int((target + C) / lo) + 1
    last_fail = 0
    for s in range(1, horizon + 1):
        if index_iterate(model, s) < target:
            last_fail = s
    return max(1, last_fail)


def growth_horizon(model: GeodesicModel, margin: int) -> int:
    """Smallest M >= 1 with i(c^s) >= i(c) + margin for every s > M."""
    mean = mean_index(model)
    lo = _positive_lower_bound(mean)
    target = model.initial_index + margin
    C = lower_deviation_constant(model)
    horizon = int((target + C) / lo) + 1
    last_fail = 0
    for s in range(1, horizon + 1):
        if index_iterate(model, s) < target:
            last_fail = s
    return max(1, last_fail)


def verify_bott(model: GeodesicModel, max_m: int) -> Report:
    """Iterate parity pattern and monotonicity along divisibility."""
    rep = Report(f"Bott checks up to m={max_m}")
    idx = {m: index_iterate(model, m) for m in range(1, max_m + 1)}
    nul = {m: nullity_iterate(model, m) for m in range(1, max_m + 1)}

    bad = None
    for m in range(1, max_m + 1):
        ref = idx[2] if m % 2 == 0 else idx[1]
        if m >= 2 and (idx[m] - ref) % 2:
            bad = m
            break
    rep.add("parity", bad is None, "" if bad is None else f"i(c^{bad}) parity", bad)

    bad_i = bad_n = None
    for q in range(1, max_m + 1):
        for p in range(2 * q, max_m + 1, q):
            if bad_i is None and idx[p] < idx[q]:
                bad_i = (q, p)
            if bad_n is None and nul[p] < nul[q]:
                bad_n = (q, p)
    rep.add("index monotone on divisors", bad_i is None,
            "" if bad_i is None else f"q|p={bad_i}", bad_i)
    rep.add("nullity monotone on divisors", bad_n is None,
            "" if bad_n is None else f"q|p={bad_n}", bad_n)
    return rep



# -- omega-indices -------------------------------------------------------------
#
# Bott's formula writes i(c^m) as the sum of i_w(c) over the m-th roots of
# unity w = exp(2*pi*i*s).  Reading the iteration formula block by block gives
# each block's contribution to i_w(c) - i(c) as a step function of s in [0, 1):
#   N1(1,1), I_2 ........ +1 for s != 0
#   q_0, q_+ blocks ..... -1 at s = 1/2
#   R(theta), t ......... -1 + [s < t] + [s > 1 - t]
#   rational N2 pair a .. -1 at s in {a, 1 - a}
# and nothing from the remaining blocks.


def omega_index(model: GeodesicModel, s: Fraction | Surd) -> int:
    """i_w(c) at w = exp(2*pi*i*s), 0 <= s < 1."""
    s = Surd.of(s)
    if s.sign() < 0 or (s - 1).sign() >= 0:
        raise ValueError(f"s={s} must lie in [0, 1)")
    nf = model.nf
    value = model.initial_index
    if s.sign() != 0:
        value += nf.p_minus + nf.p_zero
    if s == Fraction(1, 2):
        value -= nf.q_zero + nf.q_plus
    for x in nf.rotations:
        t = Surd.of(x)
        value += -1 + (s < t) + (s > 1 - t)
    for x in nf.nontrivial_pairs:
        if x.is_rational and (s == x.value or s == 1 - x.value):
            value -= 1
    return value


def omega_breakpoints(model: GeodesicModel) -> list[Surd]:
    """Sorted points of [0, 1) where i_w(c) may jump."""
    nf = model.nf
    pts = [Surd(0), Surd(Fraction(1, 2))]
    for x in nf.rotations + tuple(y for y in nf.nontrivial_pairs if y.is_rational):
        pts += [Surd.of(x), 1 - Surd.of(x)]
    return sorted(set(pts), key=cmp_to_key(lambda a, b: (a - b).sign()))


def min_omega_index(model: GeodesicModel) -> int:
    """Minimum of i_w(c) over the unit circle, evaluated exactly."""
    pts = omega_breakpoints(model)
    probes = list(pts)
    for a, b in zip(pts, pts[1:] + [Surd(1)]):
        probes.append((a + b) / 2)
    return min(omega_index(model, s) for s in probes)


def has_nonnegative_omega_indices(model: GeodesicModel) -> bool:
    """Necessary for the model to come from a closed geodesic: every i_w(c) >= 0."""
    return min_omega_index(model) >= 0
