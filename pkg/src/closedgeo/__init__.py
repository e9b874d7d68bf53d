"""Exact index iteration, quasi-periods and loop-space Betti arithmetic for
closed geodesics."""

from .betti import (
    ManifoldClass,
    RangeClaimViolated,
    alternating_sum_check,
    betti_number,
    betti_table,
    coefficient_B,
    epsilon_term,
    omega_member,
)
from .exact_numbers import (
    QuadraticRatio,
    RationalRatio,
    Surd,
    floor_scaled,
    phi_indicator,
    upper_E,
)
from .identity_ledger import (
    DJTailNonzero,
    IdentityInstance,
    KVector,
    LedgerError,
    LedgerInput,
    chi_hat,
    contradiction_scan,
    epsilon_eta_claim,
    identity_check,
    ledger_residual,
    mean_identity_residual,
    odd_sum_identity,
    validate_kvector,
)
from .index_engine import (
    MeanIndexNotPositive,
    analytical_period,
    index_iterate,
    m_zero,
    mean_index,
    nullity_iterate,
    verify_bott,
)
from .modelio import ParseError, parse_model_file, write_model_file
from .normal_form import (
    FIXTURES,
    GeodesicModel,
    NormalFormData,
    ValidationError,
    index_parity,
    initial_nullity,
    validate_model,
)
from .quasi_period import (
    QuasiPeriodConfig,
    QuasiPeriodNotFound,
    QuasiPeriodResult,
    auto_epsilon,
    find_quasi_period,
    growth_constants,
    p_of_c,
    verify_escape,
    verify_index_sum_bound,
    verify_quasi_monotonicity,
    verify_quasi_periodicity,
)
from .report import Check, Report

__all__ = [name for name in dir() if not name.startswith("_")]
