"""Resonance identity arithmetic for a hypothetical single prime closed
geodesic, plus the mean-index ledger over user-supplied critical module
dimensions (k-vectors).

For an instance (R, p) on a manifold class (d, h) put mu = p + dh - 3 and

    RHS   = sum_{j = mu-p+1}^{R+mu} (-1)^j b_j
    kappa = (-1)^(R+mu) * (RHS - B(d,h)*(R+p)).

A single geodesic forces kappa to be a nonnegative integer (an even one in
the reversible case).  ``contradiction_scan`` checks that this never happens.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .betti import ManifoldClass, betti_number, coefficient_B
from .index_engine import analytical_period, index_iterate, mean_index, nullity_iterate
from .normal_form import GeodesicModel
from .report import Report


class LedgerError(ValueError):
    pass


class DJTailNonzero(LedgerError):
    pass


@dataclass(frozen=True)
class IdentityInstance:
    mc: ManifoldClass
    R: int
    p: int
    reversible: bool = False

    def __post_init__(self) -> None:
        if self.R < 0 or self.p < 0:
            raise ValueError("R and p must be natural numbers")
        if (self.R - self.p) % 2:
            raise ValueError(f"R={self.R} and p={self.p} must have equal parity")
        if self.R + self.p < 2:
            raise ValueError("R + p must be a positive even integer")

    @property
    def mu(self) -> int:
        return self.p + self.mc.dim - 3


@dataclass(frozen=True)
class IdentityOutcome:
    instance: IdentityInstance
    rhs: int
    kappa: Fraction

    @property
    def feasible(self) -> bool:
        k = self.kappa
        if k.denominator != 1 or k < 0:
            return False
        return not self.instance.reversible or k.numerator % 2 == 0


def identity_rhs(mc: ManifoldClass, R: int, p: int) -> int:
    mu = p + mc.dim - 3
    return sum((-1) ** j * betti_number(mc, j) for j in range(mu - p + 1, R + mu + 1))


def identity_check(inst: IdentityInstance) -> IdentityOutcome:
    rhs = identity_rhs(inst.mc, inst.R, inst.p)
    sign = -1 if (inst.R + inst.mu) % 2 else 1
    kappa = sign * (rhs - coefficient_B(inst.mc) * (inst.R + inst.p))
    return IdentityOutcome(inst, rhs, Fraction(kappa))


def contradiction_scan(
    mc: ManifoldClass,
    max_sum: int,
    max_p: int | None = None,
    reversible: bool = False,
) -> Report:
    """Evaluate every (R, p) with R + p even in [2, max_sum] and p <= max_p."""
    if max_sum < 2:
        raise ValueError("max_sum must be >= 2")
    if max_p is None:
        max_p = 3 * (mc.dim - 1)
    B = coefficient_B(mc)
    dim = mc.dim
    # prefix[j] = sum_{i < j} (-1)^i b_i
    top = max_sum + max_p + dim
    prefix = [0]
    for j in range(top + 1):
        prefix.append(prefix[-1] + (-1) ** j * betti_number(mc, j))

    outcomes = []
    for p in range(0, max_p + 1):
        mu = p + dim - 3
        lo = max(mu - p + 1, 0)
        for R in range(p % 2, max_sum - p + 1, 2):
            if R + p < 2:
                continue
            inst = IdentityInstance(mc, R, p, reversible)
            rhs = prefix[R + mu + 1] - prefix[lo] if R + mu >= lo else 0
            sign = -1 if (R + mu) % 2 else 1
            outcomes.append(IdentityOutcome(inst, rhs, Fraction(sign * (rhs - B * (R + p)))))
    feasible = [o for o in outcomes if o.feasible]
    rep = Report(f"resonance identity scan d={mc.d} h={mc.h}"
                 f"{' (reversible)' if reversible else ''}")
    rep.add("no feasible instance", not feasible,
            f"{len(feasible)} feasible / {len(outcomes)} scanned",
            [(o.instance.R, o.instance.p) for o in feasible])
    rep.data.update(
        outcomes=outcomes,
        feasible=feasible,
        scanned=len(outcomes),
        max_kappa=max((o.kappa for o in outcomes), default=None),
    )
    return rep


def epsilon_eta_claim(mc: ManifoldClass) -> Report:
    """The correction at 2*eta stays strictly below (dh-(d-2))/(dh+(d-2))."""
    d, h, D = mc.d, mc.h, mc.D
    if d % 2:
        raise ValueError("even d only")

    def frac(x: Fraction) -> Fraction:
        return x - (x.numerator // x.denominator)

    bound = Fraction(d * h - (d - 2), d * h + (d - 2))
    values = {}
    for two_eta in range(0, D - 1, 2):
        values[two_eta] = (
            frac(Fraction(two_eta, d * h))
            - (Fraction(2, d) + Fraction(d - 2, d * h)) * Fraction(two_eta, D)
            - frac(Fraction(two_eta, d))
        )
    arg = max(values, key=lambda k: (values[k], -k))
    best = values[arg]
    rep = Report(f"epsilon(2 eta) claim d={d} h={h}")
    bad = [k for k, v in values.items() if not v < bound]
    rep.add("strict bound", not bad, f"max {best} at 2eta={arg}, bound {bound}", bad or None)
    rep.data.update(values=values, argmax=arg, max=best, bound=bound)
    return rep


def odd_sum_identity(mc: ManifoldClass) -> Report:
    d, h = mc.d, mc.h
    if d % 2:
        raise ValueError("even d only")
    lhs = sum(betti_number(mc, q) for q in range(1, d * h - 2, 2))
    rhs = Fraction(d * h * (h - 1), 4)
    rep = Report(f"odd Betti sum below dh-3, d={d} h={h}")
    rep.add("exact", lhs == rhs, f"{lhs} = {rhs}" if lhs == rhs else f"{lhs} != {rhs}")
    rep.data.update(lhs=lhs, rhs=rhs)
    return rep


# ---------------------------------------------------------------------------
# k-vectors and the mean index ledger


@dataclass(frozen=True)
class KVector:
    entries: tuple[int, ...]
    sign: int = 1
    attached_index: int | None = None
    attached_nullity: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def nullity(self) -> int:
        return self.attached_nullity if self.attached_nullity is not None else len(self.entries) - 1

    def k(self, j: int) -> int:
        return self.entries[j] if 0 <= j < len(self.entries) else 0


def validate_kvector(kv: KVector) -> list[str]:
    out = []
    if kv.sign not in (1, -1):
        out.append(f"sign {kv.sign} must be +1 or -1")
    if any((not isinstance(x, int)) or x < 0 for x in kv.entries):
        out.append("entries must be natural numbers")
    if not kv.entries:
        out.append("k-vector must have at least the k_0 entry")
        return out
    nu = kv.nullity
    if any(x for x in kv.entries[nu + 1:]):
        out.append(f"k_j must vanish for j > nullity {nu}")
    end = kv.k(0) + kv.k(nu)
    if nu > 0 and end > 1:
        out.append(f"k_0 + k_nu = {end} exceeds 1")
    if nu == 0 and kv.k(0) > 1:
        out.append(f"k_0 = {kv.k(0)} exceeds 1 at zero nullity")
    if end == 1 and any(kv.k(j) for j in range(1, nu)):
        out.append("k_0 + k_nu = 1 requires vanishing interior entries")
    return out


@dataclass
class LedgerInput:
    model: GeodesicModel
    kvectors: dict[int, KVector]
    n: int = field(default=0)

    def __post_init__(self) -> None:
        if not self.n:
            self.n = analytical_period(self.model)


def _check_ledger(inp: LedgerInput) -> None:
    problems = []
    for m in range(1, inp.n + 1):
        kv = inp.kvectors.get(m)
        if kv is None:
            problems.append(f"missing k-vector for m={m}")
            continue
        problems += [f"m={m}: {e}" for e in validate_kvector(kv)]
        nu = nullity_iterate(inp.model, m)
        if len(kv.entries) - 1 > nu and any(kv.entries[nu + 1:]):
            problems.append(f"m={m}: k-vector longer than nullity {nu}")
        if kv.attached_nullity is not None and kv.attached_nullity != nu:
            problems.append(f"m={m}: attached nullity {kv.attached_nullity} != {nu}")
        if kv.attached_index is not None and kv.attached_index != index_iterate(inp.model, m):
            problems.append(f"m={m}: attached index {kv.attached_index} != i(c^{m})")
    if problems:
        raise LedgerError("; ".join(problems))


def _alt_sum(model: GeodesicModel, m: int, kv: KVector, upto: int | None = None) -> int:
    i = index_iterate(model, m)
    nu = nullity_iterate(model, m)
    last = nu if upto is None else upto
    return sum((-1) ** (i + l) * kv.k(l) for l in range(0, last + 1))


def chi_hat(inp: LedgerInput) -> Fraction:
    _check_ledger(inp)
    total = sum(_alt_sum(inp.model, m, inp.kvectors[m]) for m in range(1, inp.n + 1))
    return Fraction(total, inp.n)


def _rational_mean(model: GeodesicModel) -> Fraction:
    mean = mean_index(model)
    if not mean.is_rational:
        raise LedgerError(f"mean index {mean} is irrational")
    if mean.rational <= 0:
        raise LedgerError(f"mean index {mean} is not positive")
    return mean.rational


def mean_identity_residual(inputs: list[LedgerInput], mc: ManifoldClass) -> Fraction:
    total = sum((chi_hat(inp) / _rational_mean(inp.model) for inp in inputs), Fraction(0))
    return total - coefficient_B(mc)


def ledger_residual(inp: LedgerInput, mc: ManifoldClass, mu: int) -> Fraction:
    """B*n*mean minus the alternating sum of the supplied critical modules."""
    _check_ledger(inp)
    n = inp.n
    d_vec = inp.kvectors[n]
    tail = [j for j in range(mu + 2, len(d_vec.entries)) if d_vec.k(j)]
    if tail:
        raise DJTailNonzero(f"d_j nonzero for j={tail} >= mu+2={mu + 2}")
    mean = _rational_mean(inp.model)
    total = sum(_alt_sum(inp.model, m, inp.kvectors[m]) for m in range(1, n))
    total += _alt_sum(inp.model, n, d_vec, upto=mu + 1)
    return coefficient_B(mc) * n * mean - total
