"""Command line interface.

    stieltjes gamma --m 0..3 --method all
    stieltjes zeta-deriv --l 1 --method accelerated --lambda 2
    stieltjes verify --suite all
    stieltjes crossval --m-max 5 --bits 256

Exit codes: 0 success, 1 usage error, 2 non-convergence or failed identity.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import combinatorics as comb_mod
from .altzeta import ACCELERATED, HASSE, ORACLE, alt_zeta_derivatives
from .combinatorics import DEFAULT_CACHE
from .crossval import cross_validation_report
from .formulas import (
    COFFEY,
    KLUYVER,
    LIANG_TODD,
    KluyverMismatch,
    gamma_coffey,
    gamma_kluyver,
    gamma_liang_todd,
    kluyver_generalized,
)
from .numerics import PrecisionContext
from .output import OutputRecord, format_decimal, format_error, render

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2

GAMMA_METHODS = {"coffey": COFFEY, "liang-todd": LIANG_TODD, "kluyver": KLUYVER}
ZETA_METHODS = {"hasse": HASSE, "accelerated": ACCELERATED, "oracle": ORACLE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def index_range(text: str) -> range:
    """``"3"`` or inclusive ``"a..b"``."""
    try:
        if ".." in text:
            lo, hi = (int(part) for part in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a..b range, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or negative range {text!r}")
    return range(lo, hi + 1)


def positive_rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"lambda must be positive, got {text!r}")
    return value


def decimal_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a decimal number, got {text!r}") from None


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--bits", type=positive_int, default=256, help="requested precision in bits (default 256)")
    shared.add_argument("--digits", type=positive_int, default=40, help="decimal digits printed (default 40)")
    shared.add_argument("--max-terms", type=positive_int, default=None, help="cap on series terms")
    shared.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
    shared.add_argument("--tolerance", type=decimal_fraction, default=None, help="absolute target tolerance")

    parser = _Parser(prog="stieltjes", description="Stieltjes constants from Bernoulli numbers.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gamma", parents=[shared], help="Stieltjes constants gamma_m")
    g.add_argument("--m", type=index_range, default=range(0, 1))
    g.add_argument("--method", choices=(*GAMMA_METHODS, "all"), default="coffey")
    g.add_argument("--u", type=decimal_fraction, default=Fraction(1), help="Kluyver scale; != 1 computes c_m(u)")

    z = sub.add_parser("zeta-deriv", parents=[shared], help="alternating zeta derivatives at s = 1")
    z.add_argument("--l", type=index_range, default=range(0, 1))
    z.add_argument("--method", choices=tuple(ZETA_METHODS), default="hasse")
    z.add_argument("--lambda", dest="lam", type=positive_rational, default=Fraction(1))

    v = sub.add_parser("verify", parents=[shared], help="identity suites")
    v.add_argument("--suite", choices=("exact", "numeric", "all"), default="all")
    v.add_argument("--max-n", type=int, default=40)
    v.add_argument("--m-max", type=int, default=5)

    c = sub.add_parser("crossval", parents=[shared], help="full cross-validation report")
    c.add_argument("--m-max", type=int, default=5)
    return parser


def _context(args) -> PrecisionContext:
    return PrecisionContext(bits=args.bits, tolerance=args.tolerance, max_terms=args.max_terms)


def cmd_gamma(args) -> tuple[list[OutputRecord], int]:
    ctx = _context(args)
    methods = list(GAMMA_METHODS) if args.method == "all" else [args.method]
    top = args.m[-1]
    z = alt_zeta_derivatives(top + 1, ctx)
    records = []
    status = EXIT_OK
    for m in args.m:
        if args.u != 1:
            try:
                res = kluyver_generalized(m, args.u, ctx, z=z)
            except KluyverMismatch as exc:
                print(f"stieltjes: {exc}", file=sys.stderr)
                return records, EXIT_FAIL
            records.append(
                OutputRecord(
                    "gamma",
                    format_decimal(res.value, args.digits),
                    format_error(res.error_estimate),
                    res.converged,
                    m=m,
                    method="kluyver",
                    u=str(args.u),
                )
            )
            if not res.converged:
                status = EXIT_FAIL
            continue
        for name in methods:
            kind = GAMMA_METHODS[name]
            if kind == COFFEY:
                est = gamma_coffey(m, z, ctx)
            elif kind == LIANG_TODD:
                est = gamma_liang_todd(m, z, ctx)
            else:
                est = gamma_kluyver(m, ctx)
            records.append(
                OutputRecord(
                    "gamma",
                    format_decimal(est.value, args.digits),
                    format_error(est.error_estimate),
                    est.converged,
                    m=m,
                    method=name,
                )
            )
            if not est.converged:
                status = EXIT_FAIL
    return records, status


def cmd_zeta_deriv(args) -> tuple[list[OutputRecord], int]:
    ctx = _context(args)
    method = ZETA_METHODS[args.method]
    z = alt_zeta_derivatives(args.l[-1], ctx, method, args.lam)
    records = []
    for l in args.l:
        records.append(
            OutputRecord(
                "zeta_deriv",
                format_decimal(z.values[l], args.digits),
                format_error(z.error_estimates[l]),
                z.converged[l],
                l=l,
                method=args.method,
                lam=str(args.lam) if method == ACCELERATED else None,
            )
        )
    status = EXIT_OK if all(z.converged[l] for l in args.l) else EXIT_FAIL
    return records, status


def exact_suite(max_n: int, seed: int = 0) -> list[tuple[str, Fraction, bool]]:
    """(name, largest residual, passed) for each exact identity over 1..max_n."""
    cache = DEFAULT_CACHE
    cache.extend(max_n + 1)
    results = []

    def family(name, residuals):
        residuals = list(residuals)
        worst = max((abs(r) for r in residuals), default=Fraction(0))
        results.append((name, worst, worst == 0))

    ns = range(1, max_n + 1)
    family(
        "bernoulli_recurrence",
        (sum((comb_mod.binomial(n + 1, k) * cache[k] for k in range(n + 1)), Fraction(0)) for n in ns),
    )
    family("odd_vanishing", (cache[n] for n in ns if n > 1 and n % 2))
    family("full_range_moment", (comb_mod.full_range_moment_sum(m) for m in ns))
    family("truncated_moment", (comb_mod.truncated_moment_sum(m) + cache[m] for m in ns))
    family("negative_bernoulli_sum", (Fraction(0 if comb_mod.negative_bernoulli_sum_check(p) else 1) for p in ns))
    family("rubenstein", (Fraction(0 if comb_mod.rubenstein_identity_check(n) else 1) for n in ns))
    family("bernoulli_symmetry", (Fraction(0 if comb_mod.bernoulli_symmetry_check(n) else 1) for n in ns))
    family("alternating_reciprocal", (comb_mod.alternating_reciprocal_sum(l) - Fraction(1, l + 1) for l in ns))
    family(
        "bernoulli_polynomial_integral",
        (comb_mod.BernoulliPolynomial.of_degree(m).integral_unit() for m in ns),
    )

    rng = random.Random(seed)
    trips = []
    for _ in range(100):
        length = rng.randint(1, min(30, max_n))
        seq = [Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6)) for _ in range(length)]
        forward_back = comb_mod.riordan_inverse(comb_mod.riordan_forward(seq))
        back_forward = comb_mod.riordan_forward(comb_mod.riordan_inverse(seq))
        trips.extend(x - y for x, y in zip(forward_back, seq))
        trips.extend(x - y for x, y in zip(back_forward, seq))
    family("riordan_round_trip", trips)
    return results


def cmd_verify(args) -> tuple[list[OutputRecord], int]:
    if args.suite in ("exact", "all") and args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    if args.suite in ("numeric", "all") and args.m_max < 0:
        raise UsageError("--m-max must be >= 0")
    records = []
    ok = True
    if args.suite in ("exact", "all"):
        for name, residual, passed in exact_suite(args.max_n):
            records.append(
                OutputRecord(
                    "identity_check", format_error(residual), "0", True, passed, check=name, m=args.max_n
                )
            )
            ok &= passed
    if args.suite in ("numeric", "all"):
        report = cross_validation_report(args.m_max, _context(args))
        for name, cell in report.worst_by_check().items():
            records.append(
                OutputRecord(
                    "identity_check",
                    format_error(cell.discrepancy),
                    format_error(cell.tolerance),
                    all(c.converged for c in report.cells if c.check == name),
                    all(c.passed for c in report.cells if c.check == name),
                    check=name,
                    m=args.m_max,
                )
            )
        ok &= report.all_passed
    return records, EXIT_OK if ok else EXIT_FAIL


def cmd_crossval(args) -> tuple[list[OutputRecord], int]:
    if args.m_max < 0:
        raise UsageError("--m-max must be >= 0")
    report = cross_validation_report(args.m_max, _context(args))
    records = [
        OutputRecord(
            "crossval_cell",
            format_error(c.discrepancy),
            format_error(c.tolerance),
            c.converged,
            c.passed,
            m=c.index,
            method=c.detail or None,
            check=c.check,
        )
        for c in report.cells
    ]
    return records, EXIT_OK if report.all_passed else EXIT_FAIL


COMMANDS = {"gamma": cmd_gamma, "zeta-deriv": cmd_zeta_deriv, "verify": cmd_verify, "crossval": cmd_crossval}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        records, status = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"stieltjes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(records, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
