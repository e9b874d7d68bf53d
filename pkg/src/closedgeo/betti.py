"""Rational Betti numbers of the S^1-quotient free loop space relative to
point curves, for manifolds whose rational cohomology is a truncated
polynomial algebra on one generator of degree d and height h+1.

Everything is evaluated from closed formulas on demand.  For even d the
"plus one" set Omega(d, h) is read with j ranging over [0, h-1]; the
alternative reading with j in [1, h-1] is kept behind ``j_from`` so the
two can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .report import Report


class RangeClaimViolated(AssertionError):
    pass


def _frac(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class ManifoldClass:
    d: int
    h: int

    def __post_init__(self) -> None:
        if self.d < 2 or self.h < 1:
            raise ValueError(f"need d >= 2 and h >= 1, got d={self.d}, h={self.h}")
        if self.d % 2 == 1 and self.h != 1:
            raise ValueError(f"odd generator degree d={self.d} forces h=1")

    @property
    def D(self) -> int:
        return self.d * (self.h + 1) - 2

    @property
    def dim(self) -> int:
        return self.d * self.h


def coefficient_B(mc: ManifoldClass) -> Fraction:
    d, h = mc.d, mc.h
    if d % 2 == 0:
        return Fraction(-h * (h + 1) * d, 2 * d * (h + 1) - 4)
    return Fraction(d + 1, 2 * d - 2)


def omega_member(mc: ManifoldClass, q: int, j_from: int = 0) -> bool:
    """q - (d-1) == i*D + j*d with i >= 1 and j_from <= j <= h-1."""
    d, h, D = mc.d, mc.h, mc.D
    if d % 2:
        raise ValueError("Omega is defined for even d only")
    if q % 2 == 0:
        return False
    rest = q - (d - 1)
    for j in range(j_from, h):
        t = rest - j * d
        if t >= D and t % D == 0:
            return True
    return False


def _betti_odd(d: int, q: int) -> int:
    if q < d - 1 or (q - (d - 1)) % 2:
        return 0
    if q % (d - 1) == 0 and q // (d - 1) >= 2:
        return 2
    return 1


def _betti_even_sphere(d: int, q: int) -> int:
    if q < d - 1 or (q - (d - 1)) % 2:
        return 0
    if q % (d - 1) == 0:
        k = q // (d - 1)
        if k >= 3 and k % 2 == 1:
            return 2
    return 1


def _betti_even(mc: ManifoldClass, q: int, j_from: int = 0) -> int:
    d, h = mc.d, mc.h
    if q % 2 == 0 or q <= d - 2:
        return 0
    if q < d - 1 + (h - 1) * d:
        return (q - (d - 1)) // d + 1
    if omega_member(mc, q, j_from):
        return h + 1
    return h


def betti_number(mc: ManifoldClass, q: int, j_from: int = 0) -> int:
    if q < 0:
        return 0
    if mc.d % 2:
        return _betti_odd(mc.d, q)
    return _betti_even(mc, q, j_from)


def betti_even_sphere(d: int, q: int) -> int:
    """The dedicated even-dimensional sphere table (independent of Omega)."""
    if d % 2:
        raise ValueError("d must be even")
    return 0 if q < 0 else _betti_even_sphere(d, q)


def betti_table(mc: ManifoldClass, max_q: int) -> list[tuple[int, int]]:
    return [(q, betti_number(mc, q)) for q in range(max_q + 1)]


def epsilon_odd_sphere(d: int, k: int) -> Fraction:
    """{k/(d-1)} + {k/2}: the correction in the odd-sphere alternating sum."""
    return _frac(Fraction(k, d - 1)) + _frac(Fraction(k, 2))


def epsilon_even(mc: ManifoldClass, k: int) -> Fraction:
    """Correction term of the even-d partial Betti sum; depends on k mod D only."""
    return _epsilon_even_residue(mc.d, mc.h, (k - (mc.d - 1)) % mc.D)


@lru_cache(maxsize=4096)
def _epsilon_even_residue(d: int, h: int, r: int) -> Fraction:
    D = d * (h + 1) - 2
    f = Fraction(r, D)
    return (
        _frac(Fraction(D, h * d) * f)
        - (Fraction(2, d) + Fraction(d - 2, h * d)) * f
        - h * _frac(Fraction(D, 2) * f)
        - _frac(Fraction(D, d) * f)
    )


def epsilon_term(mc: ManifoldClass, k: int) -> Fraction:
    """Evaluate the correction at k and enforce its published range."""
    d, h = mc.d, mc.h
    if k < d - 1:
        raise ValueError(f"k={k} must be >= d-1={d - 1}")
    if d % 2:
        e = epsilon_odd_sphere(d, k)
        hi = Fraction(3, 2) - Fraction(1, 2 * (d - 1))
        if not (0 <= e < hi):
            raise RangeClaimViolated(f"eps_{d},1({k})={e} outside [0, {hi})")
        return e
    e = epsilon_even(mc, k)
    if not (-(h + 2) < e < 1):
        raise RangeClaimViolated(f"eps_{d},{h}({k})={e} outside ({-(h + 2)}, 1)")
    if h == 1 and not (-2 < e <= 0):
        raise RangeClaimViolated(f"eps_{d},1({k})={e} outside (-2, 0]")
    return e


def odd_closed_form(d: int, k: int) -> Fraction:
    """k(d+1)/(2(d-1)) - (d-1)/2 - eps: alternating sum up to k, d odd."""
    return Fraction(k * (d + 1), 2 * (d - 1)) - Fraction(d - 1, 2) - epsilon_odd_sphere(d, k)


def even_closed_form(mc: ManifoldClass, k: int) -> Fraction:
    """Partial sum of b_q up to k for d even and k >= hd - 1."""
    d, h, D = mc.d, mc.h, mc.D
    return (
        Fraction(h * (h + 1) * d, 2 * D) * (k - (d - 1))
        - Fraction(h * (h - 1) * d, 4)
        + 1
        + epsilon_even(mc, k)
    )


def even_sphere_bound(d: int, k: int) -> Fraction:
    return Fraction(k * d, 2 * (d - 1)) - Fraction(d - 2, 2)


def alternating_sum_check(mc: ManifoldClass, kmax: int) -> Report:
    """Compare running Betti sums with their closed forms for every k <= kmax.

    ``data["rows"]`` holds ``(k, direct, closed, eps)``; for the even sphere
    ``closed`` is the upper bound and ``eps`` is None.
    """
    d, h = mc.d, mc.h
    if kmax < d * h - 1:
        raise ValueError(f"kmax={kmax} must be >= dh-1={d * h - 1}")
    rep = Report(f"Betti sums for d={d}, h={h}, k<={kmax}")
    rows = []
    first_bad = None
    running = 0
    for k in range(0, kmax + 1):
        b = betti_number(mc, k)
        if d % 2:
            running += b if k % 2 == 0 else -b
            if k < d - 1:
                continue
            closed, eps = odd_closed_form(d, k), epsilon_term(mc, k)
            ok = running == closed
        else:
            running += b
            if k < d * h - 1:
                continue
            closed, eps = even_closed_form(mc, k), epsilon_term(mc, k)
            ok = running == closed
        rows.append((k, running, closed, eps))
        if not ok and first_bad is None:
            first_bad = k
    rep.add("closed form", first_bad is None,
            "" if first_bad is None else f"first mismatch at k={first_bad}", first_bad)
    if d % 2 == 0 and h == 1:
        bad = None
        running = 0
        for k in range(0, kmax + 1):
            running += betti_number(mc, k) if k % 2 else 0
            if k >= d - 1 and running > even_sphere_bound(d, k) and bad is None:
                bad = k
        rep.add("even sphere bound", bad is None,
                "" if bad is None else f"exceeded at k={bad}", bad)
    rep.data["rows"] = rows
    return rep
