"""Quasi-periods of the index sequence and verification of their consequences.

A quasi-period is an even multiple T of the analytical period n at which
every irrational rotation ratio b_j has {T*b_j} within epsilon of an
integer, from above (``high``, positions collected in P) or from below
(``low``).  With A = |P| and

    p(c) = p_- + p_0 + q_0 + q_+ + 2(r_* - k_*) + r + 2A - 2k

the index then satisfies i(c^{m+T}) = i(c^m) + i(c^T) + p(c) for small m.

The search scans T upward, so the returned T is the least admissible one
under the configured constraints.  Classification of {T*b_j} against
epsilon uses integer square-root comparisons only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, lcm
from typing import Literal, Union

from .exact_numbers import Surd, distance_to_integers, frac_gt, frac_lt
from .index_engine import (
    analytical_period,
    deviation_bound,
    growth_horizon,
    index_iterate,
    m_zero,
    mean_index,
    nullity_iterate,
    _positive_lower_bound,
)
from .normal_form import GeodesicModel, NormalFormData
from .report import Report

AUTO: Literal["auto"] = "auto"


class QuasiPeriodNotFound(RuntimeError):
    def __init__(self, message: str, near_miss: int | None = None):
        super().__init__(message)
        self.near_miss = near_miss


@dataclass(frozen=True)
class QuasiPeriodConfig:
    epsilon: Union[Fraction, Literal["auto"]] = AUTO
    tau: Fraction | None = None
    strong_period: bool = False
    max_multiplier: int = 10**6
    epsilon_den: int = 10**4

    def __post_init__(self) -> None:
        if self.epsilon != AUTO:
            eps = Fraction(self.epsilon)
            if not 0 < eps < Fraction(1, 4):
                raise ValueError(f"epsilon={eps} must lie in (0, 1/4)")
            object.__setattr__(self, "epsilon", eps)
        if self.tau is not None:
            tau = Fraction(self.tau)
            if tau <= 0:
                raise ValueError("tau must be positive")
            object.__setattr__(self, "tau", tau)
        if self.max_multiplier < 1:
            raise ValueError("max_multiplier must be >= 1")


@dataclass(frozen=True)
class QuasiPeriodResult:
    T: int
    A: int
    P: frozenset[int]
    p_c: int
    epsilon_used: Fraction
    n: int = 0
    m0: int = 0
    base: int = 0
    extra: dict = field(default_factory=dict, compare=False)


def auto_epsilon(model: GeodesicModel, m0: int, den: int = 10**4) -> Fraction:
    """Certified lower bound (denominator ``den``) on
    min over m <= m0 and irrational rotations of the distance of m*b_j to Z."""
    return exact_auto_epsilon(model, m0).lower_bound(den)


def exact_auto_epsilon(model: GeodesicModel, m0: int) -> Surd:
    irr = model.nf.irrational_rotations
    if not irr:
        raise ValueError("auto epsilon needs at least one irrational rotation")
    best = None
    for m in range(1, m0 + 1):
        for x in irr:
            dist = distance_to_integers(m, x)
            if best is None or dist < best:
                best = dist
    return best


def p_of_c(nf: NormalFormData, A: int) -> int:
    if nf.k == 0 and A != 0:
        raise ValueError("A must be 0 for a rational normal form")
    return (
        nf.p_minus + nf.p_zero + nf.q_zero + nf.q_plus
        + 2 * (nf.r_star - nf.k_star) + nf.r + 2 * A - 2 * nf.k
    )


def growth_constants(model: GeodesicModel, A: int) -> tuple[int, int]:
    nf = model.nf
    lam, q = model.lam, nf.q_zero + nf.q_plus
    pairs = 2 * (nf.r_star - nf.k_star)
    K1 = lam + q + 2 * (nf.r - nf.k) + pairs + 2 * A
    K2 = lam - q + 2 * nf.k - pairs - 2 * A
    return K1, K2


def _irrational_sum_denominator(model: GeodesicModel) -> int | None:
    """Denominator of the sum of irrational rotation ratios when rational."""
    total = Surd(0)
    for x in model.nf.irrational_rotations:
        total = total + Surd.of(x)
    return total.rational.denominator if total.is_rational else None


def _classify(T: int, irr, eps: Fraction):
    """Positions (1-based) of high angles, or None if some angle is neither."""
    high = set()
    for j, x in enumerate(irr, start=1):
        if frac_gt(T, x, 1 - eps):
            high.add(j)
        elif not frac_lt(T, x, eps):
            return None
    return high


def search_epsilon(model: GeodesicModel, cfg: QuasiPeriodConfig, m0: int) -> Fraction:
    """The epsilon the search actually applies.

    In auto mode the minimum is taken over m up to the larger of m0 and the
    first iterate after which i(c^s) - i(c) >= 2k holds, so that the
    growth bounds around T hold for every m and not only near T.
    """
    nf = model.nf
    k = nf.k
    if k == 0:
        return Fraction(0) if cfg.epsilon == AUTO else cfg.epsilon
    if cfg.epsilon == AUTO:
        horizon = max(m0, growth_horizon(model, 2 * k))
        eps = auto_epsilon(model, horizon, cfg.epsilon_den)
    else:
        eps = cfg.epsilon
    mean = mean_index(model)
    if mean.is_rational:
        if eps >= Fraction(1, k):
            eps = Fraction(1, 2 * k)
    elif cfg.tau is not None:
        eps = min(eps, cfg.tau / (2 * k))
    return eps


def find_quasi_period(model: GeodesicModel, cfg: QuasiPeriodConfig = QuasiPeriodConfig()) -> QuasiPeriodResult:
    mean = mean_index(model)
    _positive_lower_bound(mean)
    nf = model.nf
    k = nf.k
    n = analytical_period(model)
    m0 = m_zero(model)
    base = n * lcm(*range(1, m0 + 1)) if cfg.strong_period else n
    step = lcm(base, 2)
    if k and mean.is_rational:
        sum_den = _irrational_sum_denominator(model)
        step = lcm(step, sum_den * n)
    eps = search_epsilon(model, cfg, m0)
    irr = nf.irrational_rotations
    lo_A = (k + 1) // 2
    limit = cfg.max_multiplier * base
    near_miss, near_score = None, -1
    T = step
    while T <= limit:
        if k == 0:
            return QuasiPeriodResult(T, 0, frozenset(), p_of_c(nf, 0), eps, n, m0, base)
        high = _classify(T, irr, eps)
        if high is not None and lo_A <= len(high) <= k:
            A = len(high)
            return QuasiPeriodResult(T, A, frozenset(high), p_of_c(nf, A), eps, n, m0, base)
        if high is None:
            score = sum(
                1 for x in irr if frac_gt(T, x, 1 - eps) or frac_lt(T, x, eps)
            )
            if score > near_score:
                near_miss, near_score = T, score
        T += step
    raise QuasiPeriodNotFound(
        f"no admissible T <= {limit} (epsilon={eps}); best near miss T={near_miss}",
        near_miss,
    )


def _abs_below(x: Surd, bound: Fraction) -> bool:
    return (abs(x) - bound).sign() < 0


def verify_quasi_periodicity(
    model: GeodesicModel, result: QuasiPeriodResult, m0: int, tau: Fraction | None = None
) -> Report:
    T, p = result.T, result.p_c
    A = result.A
    n = result.n or analytical_period(model)
    rep = Report(f"quasi-periodicity at T={T}, p(c)={p}")
    iT, nT = index_iterate(model, T), nullity_iterate(model, T)

    bad = None
    for m in range(1, m0 + 1):
        if index_iterate(model, m + T) != index_iterate(model, m) + iT + p:
            bad = m
            break
    rep.add("index shift", bad is None, "" if bad is None else f"fails at m={bad}", bad)
    bad = None
    for m in range(1, m0 + 1):
        if nullity_iterate(model, m + T) != nullity_iterate(model, m):
            bad = m
            break
    rep.add("nullity shift", bad is None, "" if bad is None else f"fails at m={bad}", bad)

    rep.add("relative parity", (iT - p) % 2 == 0, f"i(c^T)={iT}, p={p}")

    nn = nullity_iterate(model, n)
    cap = p + model.dim_M - 1 - 2 * A
    rep.add("nullity bound", nn == nT and nT <= cap, f"nu(c^n)={nn}, nu(c^T)={nT}, cap={cap}")

    mean = mean_index(model)
    gap = mean * T - (iT + p)
    if mean.is_rational:
        rep.add("period-mean index", gap == 0, f"T*mean={mean * T}, i(c^T)+p={iT + p}")
    else:
        if tau is None:
            rep.add("period-mean index", False, "tau required for irrational mean index")
        else:
            ok = _abs_below(gap, tau)
            rep.add("period-mean index", ok,
                    f"|T*mean - (i(c^T)+p)| ~ {abs(gap).approx(6)} vs tau={tau}")
    rep.data.update(iT=iT, nuT=nT, gap=gap)
    return rep


def verify_index_sum_bound(model: GeodesicModel, result: QuasiPeriodResult) -> Report:
    T, p = result.T, result.p_c
    bound = index_iterate(model, T) + p + model.dim_M - 3
    best, arg, bad = None, None, None
    for m in range(1, T):
        v = index_iterate(model, m) + nullity_iterate(model, m)
        if best is None or v > best:
            best, arg = v, m
        if v > bound and bad is None:
            bad = m
    rep = Report(f"index+nullity bound below T={T}")
    rep.add("index+nullity bound", bad is None,
            f"max lhs {best} at m={arg}, bound {bound}" + ("" if bad is None else f", first violation m={bad}"),
            bad)
    rep.data.update(max_lhs=best, argmax=arg, bound=bound)
    return rep


def verify_escape(model: GeodesicModel, result: QuasiPeriodResult, m0: int, horizon: int) -> Report:
    T, p = result.T, result.p_c
    iT = index_iterate(model, T)
    need = p + model.dim_M
    bad = None
    for m in range(1, horizon + 1):
        if index_iterate(model, T + m0 + m) - iT < need:
            bad = m
            break
    rep = Report(f"escape beyond T+m0={T + m0}")
    rep.add("escape", bad is None, f"need >= {need}" + ("" if bad is None else f", fails at m={bad}"), bad)
    return rep


def _certified_window(model: GeodesicModel, K: int) -> int:
    """H such that s * mean - 2 * deviation_bound >= K for every s >= H."""
    lo = _positive_lower_bound(mean_index(model))
    need = Fraction(K + 2 * deviation_bound(model)) / lo
    return max(1, ceil(need))


def verify_quasi_monotonicity(
    model: GeodesicModel,
    result: QuasiPeriodResult,
    horizon: int | None = None,
    exhaustive: bool = False,
) -> Report:
    """Growth constants around T: below T on [1, T-1], above T up to horizon.

    Because |i(c^m) - m*mean| never exceeds deviation_bound, a gap of s
    iterates from T forces an index difference of at least s*mean - 2*bound.
    Past the width where that reaches K1 (or K2) the inequality holds without
    evaluation, so only a window around T is scanned unless ``exhaustive``.
    """
    T = result.T
    horizon = 3 * T if horizon is None else horizon
    K1, K2 = growth_constants(model, result.A)
    iT = index_iterate(model, T)
    rep = Report(f"quasi-monotonicity at T={T} (K1={K1}, K2={K2})")

    start = 1 if exhaustive else max(1, T - _certified_window(model, K2))
    bad = next((m for m in range(start, T) if iT - index_iterate(model, m) < K2), None)
    rep.add("growth below T", bad is None,
            f"scanned m >= {start}" if bad is None else f"fails at m={bad}", bad)

    stop = horizon if exhaustive else min(horizon, T + _certified_window(model, K1))
    bad = next((m for m in range(T + 1, stop + 1) if index_iterate(model, m) - iT < K1), None)
    rep.add("growth above T", bad is None,
            f"scanned m <= {stop}" if bad is None else f"fails at m={bad}", bad)
    return rep
