"""Exact arithmetic for rotation ratios theta/(2*pi).

Angles enter every index formula only through the ratio theta/(2*pi), so a
ratio is stored either as a reduced fraction or as a real quadratic irrational
``(a + b*sqrt(D))/c``.  Floors and fractional parts of integer multiples
are computed with integer arithmetic only (``math.isqrt``); no
floating point value ever reaches a result.

:class:`Surd` holds finite sums ``q0 + sum(q_i * sqrt(D_i))`` with distinct
square-free radicands.  Because such square roots are linearly independent
over the rationals, a ``Surd`` with any nonzero radical coefficient is
irrational and its sign can always be decided by refining integer bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(f, s)`` with ``n == f*f*s`` and ``s`` square-free."""
    if n <= 0:
        raise ValueError(f"radicand must be positive, got {n}")
    f, s = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        f *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1 if p == 2 else 2
    return f, s * n


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _floor_sqrt_times(k: int, D: int) -> int:
    """floor(k*sqrt(D)) for integer k and non-square D."""
    if k >= 0:
        return isqrt(k * k * D)
    return -isqrt(k * k * D) - 1


class Surd:
    """Exact value ``rational + sum(coeff * sqrt(D))`` over square-free D > 1."""

    __slots__ = ("rational", "terms")

    def __init__(self, rational: Number = 0, terms: Mapping[int, Number] | Iterable = ()):
        acc: dict[int, Fraction] = {}
        rat = Fraction(rational)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for D, coeff in items:
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            f, s = squarefree_split(int(D))
            if s == 1:
                rat += coeff * f
                continue
            acc[s] = acc.get(s, Fraction(0)) + coeff * f
        self.rational = rat
        self.terms = tuple(sorted((D, q) for D, q in acc.items() if q != 0))

    @classmethod
    def of(cls, x: "Number | Surd | RationalRatio | QuadraticRatio") -> "Surd":
        if isinstance(x, Surd):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        return x.to_surd()

    # -- structure ---------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return not self.terms

    def as_fraction(self) -> Fraction:
        if self.terms:
            raise ValueError(f"{self} is irrational")
        return self.rational

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Surd(other)
        if not isinstance(other, Surd):
            return NotImplemented
        return self.rational == other.rational and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.rational, self.terms))

    def __repr__(self) -> str:
        return f"Surd({self.rational!r}, {dict(self.terms)!r})"

    def __str__(self) -> str:
        parts = [str(self.rational)] if self.rational or not self.terms else []
        for D, q in self.terms:
            parts.append(f"{q}*sqrt({D})")
        return " + ".join(parts)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "Number | Surd") -> "Surd":
        other = Surd.of(other)
        terms = dict(self.terms)
        for D, q in other.terms:
            terms[D] = terms.get(D, Fraction(0)) + q
        return Surd(self.rational + other.rational, terms)

    __radd__ = __add__

    def __neg__(self) -> "Surd":
        return Surd(-self.rational, {D: -q for D, q in self.terms})

    def __sub__(self, other: "Number | Surd") -> "Surd":
        return self + (-Surd.of(other))

    def __rsub__(self, other: "Number | Surd") -> "Surd":
        return Surd.of(other) - self

    def __mul__(self, k: Number) -> "Surd":
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return Surd(self.rational * k, {D: q * k for D, q in self.terms})

    __rmul__ = __mul__

    def __truediv__(self, k: Number) -> "Surd":
        return self * (1 / Fraction(k))

    # -- certified ordering ------------------------------------------------
    def bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational enclosure ``lo <= value <= hi`` from isqrt at 2**-bits."""
        lo = hi = self.rational
        scale = 1 << bits
        for D, q in self.terms:
            r = isqrt(D * scale * scale)
            a, b = Fraction(r, scale), Fraction(r + 1, scale)
            if q > 0:
                lo, hi = lo + q * a, hi + q * b
            else:
                lo, hi = lo + q * b, hi + q * a
        return lo, hi

    def sign(self) -> int:
        if not self.terms:
            return (self.rational > 0) - (self.rational < 0)
        if len(self.terms) == 1:
            (D, y), x = self.terms[0], self.rational
            sy = 1 if y > 0 else -1
            if x == 0 or (x > 0) == (y > 0):
                return sy
            # opposite signs: compare x^2 with y^2 * D
            return sy if y * y * D > x * x else -sy
        bits = 32
        while True:
            lo, hi = self.bounds(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def _cmp(self, other: "Number | Surd") -> int:
        return (self - other).sign()

    def __lt__(self, other: "Number | Surd") -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: "Number | Surd") -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: "Number | Surd") -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: "Number | Surd") -> bool:
        return self._cmp(other) >= 0

    def __abs__(self) -> "Surd":
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        if not self.terms:
            return self.rational.numerator // self.rational.denominator
        if len(self.terms) == 1:
            (D, y), x = self.terms[0], self.rational
            # value = (n + k*sqrt(D)) / c with integer n, k and c > 0
            c = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
            n, k = int(x * c), int(y * c)
            return (n + _floor_sqrt_times(k, D)) // c
        bits = 32
        while True:
            lo, hi = self.bounds(bits)
            fl = lo.numerator // lo.denominator
            if fl == hi.numerator // hi.denominator:
                return fl
            bits *= 2

    def ceil(self) -> int:
        return -((-self).floor())

    def frac(self) -> "Surd":
        return self - self.floor()

    def lower_bound(self, den: int) -> Fraction:
        """Largest fraction with denominator ``den`` not exceeding the value."""
        return Fraction((self * den).floor(), den)

    def upper_bound(self, den: int) -> Fraction:
        return Fraction((self * den).ceil(), den)

    def approx(self, digits: int = 12) -> str:
        """Decimal text truncated toward -inf; display only."""
        scale = 10 ** digits
        v = (self * scale).floor()
        sign = "-" if v < 0 else ""
        v = abs(v)
        return f"{sign}{v // scale}.{v % scale:0{digits}d}"


@dataclass(frozen=True)
class RationalRatio:
    """A reduced fraction ``num/den``."""

    num: int
    den: int

    def __post_init__(self) -> None:
        if self.den == 0:
            raise ValueError("denominator must be nonzero")
        g = gcd(self.num, self.den) or 1
        sgn = -1 if self.den < 0 else 1
        object.__setattr__(self, "num", sgn * self.num // g)
        object.__setattr__(self, "den", sgn * self.den // g)

    is_rational = True

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    def to_surd(self) -> Surd:
        return Surd(self.value)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


@dataclass(frozen=True)
class QuadraticRatio:
    """``(a + b*sqrt(D))/c`` kept with square-free D and gcd(a, b, c) = 1."""

    a: int
    b: int
    c: int
    D: int

    def __post_init__(self) -> None:
        if self.c == 0:
            raise ValueError("denominator c must be nonzero")
        if self.b == 0:
            raise ValueError("coefficient b must be nonzero")
        if self.D <= 1 or is_square(self.D):
            raise ValueError(f"D={self.D} must be a positive non-square integer")
        f, s = squarefree_split(self.D)
        a, b, c = self.a, self.b * f, self.c
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "c", c // g)
        object.__setattr__(self, "D", s)

    is_rational = False

    def to_surd(self) -> Surd:
        return Surd(Fraction(self.a, self.c), {self.D: Fraction(self.b, self.c)})

    @property
    def value(self) -> Surd:
        return self.to_surd()

    def __str__(self) -> str:
        return f"({self.a}{self.b:+d}*sqrt({self.D}))/{self.c}"


AngleRatio = Union[RationalRatio, QuadraticRatio]


def floor_scaled(m: int, x: AngleRatio) -> int:
    """Exact floor of ``m*x``."""
    if isinstance(x, RationalRatio):
        return (m * x.num) // x.den
    return (m * x.a + _floor_sqrt_times(m * x.b, x.D)) // x.c


def upper_E(m: int, x: AngleRatio) -> int:
    """Exact ceiling ``E(m*x)``."""
    return floor_scaled(m, x) + phi_indicator(m, x)


def phi_indicator(m: int, x: AngleRatio) -> int:
    """0 when ``m*x`` is an integer, 1 otherwise."""
    if isinstance(x, RationalRatio):
        return 0 if (m * x.num) % x.den == 0 else 1
    return 1


def frac_scaled(m: int, x: AngleRatio) -> Surd:
    """Fractional part ``{m*x}`` as an exact value."""
    return Surd.of(x) * m - floor_scaled(m, x)


def distance_to_integers(m: int, x: AngleRatio) -> Surd:
    """``min({m*x}, 1 - {m*x})``."""
    f = frac_scaled(m, x)
    g = 1 - f
    return f if f <= g else g


def angle_value(x: AngleRatio) -> Surd:
    return Surd.of(x)


def _sqrt_term_gt(X: int, D: int, Y: int) -> bool:
    """X*sqrt(D) > Y for integers X, Y and non-square D."""
    if X >= 0:
        return Y < 0 or X * X * D > Y * Y
    return Y < 0 and X * X * D < Y * Y


def frac_gt(m: int, x: AngleRatio, q: Fraction) -> bool:
    """Exact test ``{m*x} > q`` using integer comparisons only."""
    F = floor_scaled(m, x)
    if isinstance(x, RationalRatio):
        return Fraction(m * x.num, x.den) - F > q
    # (m*a + m*b*sqrt(D))/c > F + q  <=>  v*m*b*sqrt(D) > c*(v*F + u) - v*m*a
    u, v = q.numerator, q.denominator
    return _sqrt_term_gt(v * m * x.b, x.D, x.c * (v * F + u) - v * m * x.a)


def frac_lt(m: int, x: AngleRatio, q: Fraction) -> bool:
    """Exact test ``{m*x} < q``; irrational multiples never tie."""
    if isinstance(x, RationalRatio):
        return Fraction(m * x.num, x.den) - floor_scaled(m, x) < q
    return not frac_gt(m, x, q)
