"""Command line front end.

Exit status 1 covers bad input of any kind.  Status 2 means the input was
fine but a verification check failed or a scan found a feasible instance.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from math import gcd
from typing import Sequence

from .betti import ManifoldClass, RangeClaimViolated, alternating_sum_check, betti_table
from .exact_numbers import QuadraticRatio, RationalRatio, Surd
from .identity_ledger import LedgerError, LedgerInput, contradiction_scan, ledger_residual
from .index_engine import (
    MeanIndexNotPositive,
    analytical_period,
    iterate_table,
    m_zero,
    mean_index,
    min_omega_index,
    verify_bott,
)
from .modelio import ParseError, parse_kvector_file, parse_model_file
from .normal_form import ValidationError, initial_nullity
from .quasi_period import (
    QuasiPeriodConfig,
    QuasiPeriodNotFound,
    find_quasi_period,
    p_of_c,
    verify_escape,
    verify_index_sum_bound,
    verify_quasi_periodicity,
)
from .report import Report

DEFAULT_TAU = Fraction(3, 10)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected NUM/DEN, got {text!r}") from exc


# -- exact text encodings ----------------------------------------------------


def exact_text(x) -> str:
    """num/den for rationals, (a,b,c,D) for quadratic values."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, RationalRatio):
        return f"{x.num}/{x.den}"
    if isinstance(x, QuadraticRatio):
        return f"({x.a},{x.b},{x.c},{x.D})"
    if isinstance(x, Surd):
        if x.is_rational:
            return exact_text(x.rational)
        if len(x.terms) == 1:
            (D, q), r = x.terms[0], x.rational
            c = r.denominator * q.denominator // gcd(r.denominator, q.denominator)
            return f"({int(r * c)},{int(q * c)},{c},{D})"
        return str(x)
    if isinstance(x, (set, frozenset, list, tuple)):
        return "{" + " ".join(str(v) for v in sorted(x)) + "}"
    return str(x)


def display_text(x) -> str:
    """Table-mode rendering: exact text plus an approximate decimal for surds."""
    if isinstance(x, Surd) and not x.is_rational:
        return f"{exact_text(x)} ~{x.approx(6)}"
    return exact_text(x)


# -- emission ------------------------------------------------------------------


class Table:
    def __init__(self, header: Sequence[str], rows: list[Sequence], title: str = "", footer: Sequence[str] = ()):
        self.header = list(header)
        self.rows = rows
        self.title = title
        self.footer = list(footer)


def render(table: Table, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.header)
        for row in table.rows:
            w.writerow([exact_text(v) for v in row])
        return buf.getvalue()
    cells = [[display_text(v) for v in row] for row in table.rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(table.header)]
    lines = [table.title] if table.title else []
    lines.append("  ".join(h.rjust(w) for h, w in zip(table.header, widths)).rstrip())
    for r in cells:
        lines.append("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip())
    lines += table.footer
    return "\n".join(lines) + "\n"


def emit_table(table: Table, fmt: str = "table", out: str | None = None) -> None:
    text = render(table, fmt)
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", newline="\n", encoding="ascii", errors="replace") as fh:
        fh.write(text)


def report_table(reports: list[Report]) -> Table:
    rows = []
    for rep in reports:
        for chk in rep.checks:
            rows.append((rep.title, chk.name, "pass" if chk.passed else "FAIL", chk.detail))
    return Table(["report", "check", "result", "detail"], rows)


# -- commands ----------------------------------------------------------------


def _model(args):
    if not args.model:
        raise UsageError("--model is required")
    return parse_model_file(args.model)


def _config(args) -> QuasiPeriodConfig:
    return QuasiPeriodConfig(
        epsilon=args.epsilon if args.epsilon is not None else "auto",
        tau=args.tau,
        strong_period=args.strong,
        max_multiplier=args.max_multiplier,
    )


def cmd_validate(args) -> tuple[Table, int]:
    model = _model(args)
    nf = model.nf
    rows = [
        ("dim", model.dim_M),
        ("index", model.initial_index),
        ("nullity", initial_nullity(nf)),
        ("rational", model.is_rational),
        ("irrational rotations", nf.k),
        ("min omega-index", min_omega_index(model)),
    ]
    footer = []
    if rows[-1][1] < 0:
        footer.append("note: a negative omega-index cannot occur for a closed geodesic")
    return Table(["field", "value"], rows, title="model is valid", footer=footer), 0


def cmd_iterate(args) -> tuple[Table, int]:
    model = _model(args)
    rows = [(m, i, nu) for m, i, nu in iterate_table(model, args.max_m)]
    return Table(["m", "index", "nullity"], rows), 0


def cmd_period(args) -> tuple[Table, int]:
    model = _model(args)
    rows = [
        ("n", analytical_period(model)),
        ("m0", m_zero(model)),
        ("mean_index", mean_index(model)),
    ]
    return Table(["field", "value"], rows), 0


def _quasi(args, model):
    return find_quasi_period(model, _config(args))


def cmd_quasi(args) -> tuple[Table, int]:
    model = _model(args)
    res = _quasi(args, model)
    rows = [
        ("T", res.T),
        ("A", res.A),
        ("P", res.P),
        ("p_c", res.p_c),
        ("epsilon", res.epsilon_used),
        ("n", res.n),
        ("m0", res.m0),
        ("base", res.base),
    ]
    return Table(["field", "value"], rows, title=f"T={res.T}"), 0


def cmd_verify(args) -> tuple[Table, int]:
    model = _model(args)
    res = _quasi(args, model)
    tau = args.tau if args.tau is not None else DEFAULT_TAU
    m0 = res.m0 or m_zero(model)
    reports = [
        verify_quasi_periodicity(model, res, m0, tau),
        verify_index_sum_bound(model, res),
        verify_escape(model, res, m0, args.max_m),
        verify_bott(model, max(args.max_m, 2 * res.T)),
    ]
    ok = all(r.passed for r in reports)
    table = report_table(reports)
    table.footer = [f"T={res.T}: {'all checks pass' if ok else 'verification FAILED'}"]
    return table, 0 if ok else 2


def _manifold(args) -> ManifoldClass:
    if args.d is None:
        raise UsageError("--d is required")
    try:
        return ManifoldClass(args.d, args.h)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_betti(args) -> tuple[Table, int]:
    mc = _manifold(args)
    table = Table(["q", "b_q"], betti_table(mc, args.max_q))
    code = 0
    if args.max_q >= mc.dim - 1:
        try:
            rep = alternating_sum_check(mc, args.max_q)
            ok = rep.passed
            table.footer = [f"{c.name}: {'pass' if c.passed else 'FAIL'} {c.detail}".rstrip() for c in rep.checks]
        except RangeClaimViolated as exc:
            ok = False
            table.footer = [f"range claim violated: {exc}"]
        code = 0 if ok else 2
    if args.format == "csv":
        for line in table.footer:
            print(line, file=sys.stderr)
    return table, code


def cmd_identity_scan(args) -> tuple[Table, int]:
    mc = _manifold(args)
    max_p = args.max_p if args.max_p is not None else 3 * (mc.dim - 1)
    rep = contradiction_scan(mc, args.max_sum, max_p, reversible=args.reversible)
    chk = rep.checks[0]
    if args.format == "csv":
        rows = [
            (o.instance.R, o.instance.p, o.kappa.numerator, o.kappa.denominator, o.feasible)
            for o in rep.data["outcomes"]
        ]
        table = Table(["R", "p", "kappa_num", "kappa_den", "feasible"], rows)
        print(chk.detail, file=sys.stderr)
    else:
        rows = [(o.instance.R, o.instance.p, o.kappa) for o in rep.data["feasible"]]
        table = Table(["R", "p", "kappa"], rows, title=rep.title, footer=[chk.detail])
    return table, 0 if chk.passed else 2


def cmd_ledger(args) -> tuple[Table, int]:
    model = _model(args)
    mc = _manifold(args)
    if not args.kvectors:
        raise UsageError("--kvectors is required")
    kvectors = parse_kvector_file(args.kvectors)
    mu = args.mu
    if mu is None:
        A = _quasi(args, model).A if model.nf.k else 0
        mu = p_of_c(model.nf, A) + mc.dim - 3
    residual = ledger_residual(LedgerInput(model, kvectors), mc, mu)
    rows = [("mu", mu), ("residual", residual)]
    return Table(["field", "value"], rows), 0


COMMANDS = {
    "validate": cmd_validate,
    "iterate": cmd_iterate,
    "period": cmd_period,
    "quasi": cmd_quasi,
    "verify": cmd_verify,
    "betti": cmd_betti,
    "identity-scan": cmd_identity_scan,
    "ledger": cmd_ledger,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", metavar="FILE")
    common.add_argument("--max-m", type=int, default=50)
    common.add_argument("--epsilon", type=_fraction, metavar="NUM/DEN")
    common.add_argument("--tau", type=_fraction, metavar="NUM/DEN")
    common.add_argument("--strong", action="store_true", help="use the strong period base")
    common.add_argument("--max-multiplier", type=int, default=10**6)
    common.add_argument("--d", type=int)
    common.add_argument("--h", type=int, default=1)
    common.add_argument("--max-q", type=int, default=60)
    common.add_argument("--max-sum", type=int, default=100)
    common.add_argument("--max-p", type=int)
    common.add_argument("--reversible", action="store_true")
    common.add_argument("--kvectors", metavar="FILE")
    common.add_argument("--mu", type=int)
    common.add_argument("--format", choices=("table", "csv"), default="table")
    common.add_argument("--out", metavar="FILE")

    parser = _Parser(prog="closedgeo", description="Index iteration and loop-space arithmetic checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def run_command(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else 1
    try:
        if args.max_m < 1:
            raise UsageError("--max-m must be positive")
        table, code = COMMANDS[args.command](args)
        emit_table(table, args.format, args.out)
        return code
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
    except (ParseError, UsageError, LedgerError, MeanIndexNotPositive, QuasiPeriodNotFound, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
    return 1


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
