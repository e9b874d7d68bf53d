"""Basic normal form data of a linearized Poincare map and the geodesic model.

A symplectic endpoint is described only through its block counts and rotation
ratios; nothing here looks at an explicit matrix.  Block names follow the
usual notation: ``p_minus``/``p_zero``/``p_plus`` count the eigenvalue-1 blocks
N1(1,1), I_2, N1(1,-1); ``q_*`` the eigenvalue -1 blocks; ``rotations`` the
R(theta) blocks; ``nontrivial_pairs``/``trivial_pairs`` the N2 blocks;
``h_plus``/``h_minus`` the hyperbolic blocks H(2), H(-2).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .exact_numbers import AngleRatio, RationalRatio, Surd


class ValidationError(ValueError):
    """A model failed validation; ``report`` lists every violated invariant."""

    def __init__(self, report: list[str]):
        self.report = list(report)
        super().__init__("; ".join(self.report))


def _irrational_first(angles: tuple[AngleRatio, ...]) -> bool:
    seen_rational = False
    for x in angles:
        if x.is_rational:
            seen_rational = True
        elif seen_rational:
            return False
    return True


@dataclass(frozen=True)
class NormalFormData:
    half_dim: int
    p_minus: int = 0
    p_zero: int = 0
    p_plus: int = 0
    q_minus: int = 0
    q_zero: int = 0
    q_plus: int = 0
    rotations: tuple[AngleRatio, ...] = ()
    nontrivial_pairs: tuple[AngleRatio, ...] = ()
    trivial_pairs: tuple[AngleRatio, ...] = ()
    h_plus: int = 0
    h_minus: int = 0

    def __post_init__(self) -> None:
        for name in ("rotations", "nontrivial_pairs", "trivial_pairs"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    # block counts in the conventional letters
    @property
    def r(self) -> int:
        return len(self.rotations)

    @property
    def k(self) -> int:
        return sum(1 for x in self.rotations if not x.is_rational)

    @property
    def r_star(self) -> int:
        return len(self.nontrivial_pairs)

    @property
    def k_star(self) -> int:
        return sum(1 for x in self.nontrivial_pairs if not x.is_rational)

    @property
    def r_zero(self) -> int:
        return len(self.trivial_pairs)

    @property
    def k_zero(self) -> int:
        return sum(1 for x in self.trivial_pairs if not x.is_rational)

    @property
    def irrational_rotations(self) -> tuple[AngleRatio, ...]:
        return tuple(x for x in self.rotations if not x.is_rational)

    def rational_ratios(self) -> list[RationalRatio]:
        """Every rational ratio of every block kind."""
        return [
            x
            for x in self.rotations + self.nontrivial_pairs + self.trivial_pairs
            if x.is_rational
        ]

    def block_dimension(self) -> int:
        return (
            self.p_minus + self.p_zero + self.p_plus
            + self.q_minus + self.q_zero + self.q_plus
            + self.r + 2 * self.r_star + 2 * self.r_zero
            + self.h_minus + self.h_plus
        )

    def errors(self) -> list[str]:
        out = []
        counts = {
            "p_minus": self.p_minus, "p_zero": self.p_zero, "p_plus": self.p_plus,
            "q_minus": self.q_minus, "q_zero": self.q_zero, "q_plus": self.q_plus,
            "h_plus": self.h_plus, "h_minus": self.h_minus,
        }
        for name, v in counts.items():
            if not isinstance(v, int) or v < 0:
                out.append(f"{name}={v!r} must be a natural number")
        if self.h_minus not in (0, 1):
            out.append(f"h_minus={self.h_minus} must be 0 or 1")
        total = self.block_dimension()
        if total != self.half_dim:
            out.append(
                f"dimension budget: block sum {total} != half dimension {self.half_dim}"
            )
        for name in ("rotations", "nontrivial_pairs", "trivial_pairs"):
            angles = getattr(self, name)
            for i, x in enumerate(angles):
                v = Surd.of(x)
                if not (0 < v < 1):
                    out.append(f"{name}[{i}]={x} must lie in (0, 1)")
                elif v == Fraction(1, 2):
                    out.append(f"{name}[{i}]={x} must differ from 1/2")
            if not _irrational_first(angles):
                out.append(f"{name}: irrational entries must precede rational ones")
        return out

    def parity_count(self) -> int:
        """Number of odd-index blocks."""
        return (
            self.p_minus + self.p_zero + self.q_minus + self.q_zero
            + self.q_plus + self.r + self.h_minus
        )


@dataclass(frozen=True)
class GeodesicModel:
    dim_M: int
    initial_index: int
    nf: NormalFormData = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.nf is None:
            object.__setattr__(self, "nf", NormalFormData(half_dim=self.dim_M - 1))

    def with_nf(self, **changes) -> "GeodesicModel":
        return replace(self, nf=replace(self.nf, **changes))

    @property
    def lam(self) -> int:
        """i(c) + p_minus + p_zero - r: the linear growth term of the index."""
        nf = self.nf
        return self.initial_index + nf.p_minus + nf.p_zero - nf.r

    @property
    def is_rational(self) -> bool:
        return self.nf.k == 0


def validate_model(model: GeodesicModel) -> list[str]:
    """All violated invariants of ``model``; empty means valid."""
    out = []
    if not isinstance(model.dim_M, int) or model.dim_M < 2:
        out.append(f"dim_M={model.dim_M} must be an integer >= 2")
    if not isinstance(model.initial_index, int) or model.initial_index < 0:
        out.append(f"initial_index={model.initial_index} must be a natural number")
    if model.nf.half_dim != model.dim_M - 1:
        out.append(
            f"half dimension {model.nf.half_dim} != dim_M - 1 = {model.dim_M - 1}"
        )
    out.extend(model.nf.errors())
    if isinstance(model.initial_index, int) and (
        model.initial_index % 2 != model.nf.parity_count() % 2
    ):
        out.append(
            f"index parity: i(c)={model.initial_index} but the normal form "
            f"forces {'odd' if model.nf.parity_count() % 2 else 'even'} index"
        )
    return out


def require_valid(model: GeodesicModel) -> GeodesicModel:
    report = validate_model(model)
    if report:
        raise ValidationError(report)
    return model


def initial_nullity(nf: NormalFormData) -> int:
    return nf.p_minus + 2 * nf.p_zero + nf.p_plus


def index_parity(nf: NormalFormData) -> str:
    return "odd" if nf.parity_count() % 2 else "even"


def _fixtures() -> dict[str, GeodesicModel]:
    from .exact_numbers import QuadraticRatio

    return {
        "A": GeodesicModel(3, 1, NormalFormData(2, p_plus=1, rotations=(RationalRatio(1, 3),))),
        "B": GeodesicModel(2, 1, NormalFormData(1, rotations=(QuadraticRatio(-1, 1, 2, 5),))),
        "C": GeodesicModel(2, 2, NormalFormData(1, h_plus=1)),
        "D": GeodesicModel(2, 1, NormalFormData(1, h_minus=1)),
    }


FIXTURES = _fixtures()
