from fractions import Fraction

import pytest

from closedgeo import (
    FIXTURES,
    DJTailNonzero,
    IdentityInstance,
    KVector,
    LedgerError,
    LedgerInput,
    ManifoldClass,
    chi_hat,
    contradiction_scan,
    epsilon_eta_claim,
    identity_check,
    ledger_residual,
    mean_identity_residual,
    odd_sum_identity,
    validate_kvector,
)

A, B, C, D = (FIXTURES[k] for k in "ABCD")
S2 = ManifoldClass(2, 1)
S3 = ManifoldClass(3, 1)


def kv(*entries):
    return KVector(tuple(entries))


DATA_C = LedgerInput(C, {1: kv(1)})
DATA_D = LedgerInput(D, {1: kv(1), 2: kv(1)})
DATA_A = LedgerInput(A, {1: kv(1), 2: kv(1), 3: kv(1, 0, 0, 0)})


def test_validate_kvector():
    assert validate_kvector(kv(1, 0, 0, 0)) == []
    assert validate_kvector(kv(1, 0, 0, 1))
    assert validate_kvector(kv(0, 2, 0)) == []
    assert validate_kvector(KVector((1,), sign=0))


def test_chi_hat():
    assert chi_hat(DATA_C) == 1
    assert chi_hat(DATA_D) == 0
    assert chi_hat(DATA_A) == -1


def test_mean_identity_residual():
    assert mean_identity_residual([DATA_C], S2) == Fraction(3, 2)
    assert mean_identity_residual([], S2) == 1
    assert mean_identity_residual([DATA_D], S2) == 1


def test_ledger_residual():
    assert ledger_residual(DATA_C, S2, 0) == -3
    assert ledger_residual(DATA_D, S2, 0) == -2
    assert ledger_residual(DATA_A, S3, 1) == 5


def test_ledger_rejects_tail_and_gaps():
    with pytest.raises(DJTailNonzero):
        ledger_residual(LedgerInput(A, {1: kv(1), 2: kv(1), 3: kv(0, 0, 0, 1)}), S3, 0)
    with pytest.raises(LedgerError):
        chi_hat(LedgerInput(A, {1: kv(1)}))
    with pytest.raises(LedgerError):
        chi_hat(LedgerInput(A, {1: KVector((1,), attached_nullity=2), 2: kv(1), 3: kv(1)}))
    with pytest.raises(LedgerError):
        mean_identity_residual([LedgerInput(B, {1: kv(1)})], S2)


@pytest.mark.parametrize("d, R, p", [(3, 1, 1), (2, 1, 1), (3, 3, 1)])
def test_identity_examples(d, R, p):
    out = identity_check(IdentityInstance(ManifoldClass(d, 1), R, p))
    assert out.kappa == -1 and not out.feasible


def test_instance_invariants():
    with pytest.raises(ValueError):
        IdentityInstance(S2, 2, 1)
    with pytest.raises(ValueError):
        IdentityInstance(S2, 0, 0)
    assert IdentityInstance(ManifoldClass(4, 2), 2, 2).mu == 7


def test_feasibility_rules():
    from closedgeo.identity_ledger import IdentityOutcome

    inst = IdentityInstance(S2, 1, 1)
    assert IdentityOutcome(inst, 0, Fraction(3)).feasible
    assert not IdentityOutcome(inst, 0, Fraction(3, 2)).feasible
    rev = IdentityInstance(S2, 1, 1, reversible=True)
    assert not IdentityOutcome(rev, 0, Fraction(3)).feasible
    assert IdentityOutcome(rev, 0, Fraction(4)).feasible


@pytest.mark.parametrize("d, h", [(2, 1), (3, 1), (2, 2)])
def test_scan_examples(d, h):
    rep = contradiction_scan(ManifoldClass(d, h), 100, 6)
    assert rep.passed
    assert rep.data["feasible"] == []


def test_scan_agrees_with_direct_evaluation():
    for mc in (S2, S3, ManifoldClass(4, 2)):
        rep = contradiction_scan(mc, 40, 9)
        for o in rep.data["outcomes"]:
            direct = identity_check(o.instance)
            assert (direct.rhs, direct.kappa) == (o.rhs, o.kappa)


def test_epsilon_eta_claim():
    rep = epsilon_eta_claim(ManifoldClass(4, 2))
    assert rep.passed
    assert (rep.data["max"], rep.data["argmax"], rep.data["bound"]) == (Fraction(1, 5), 4, Fraction(3, 5))
    assert list(rep.data["values"].values()) == [0, Fraction(-2, 5), Fraction(1, 5), Fraction(-1, 5), Fraction(-3, 5)]
    rep = epsilon_eta_claim(S2)
    assert (rep.data["max"], rep.data["argmax"], rep.data["bound"]) == (0, 0, 1)
    assert epsilon_eta_claim(ManifoldClass(2, 2)).passed


@pytest.mark.parametrize("d, h, value", [(2, 2, 1), (4, 2, 2), (2, 3, 3)])
def test_odd_sum_identity(d, h, value):
    rep = odd_sum_identity(ManifoldClass(d, h))
    assert rep.passed and rep.data["lhs"] == value
