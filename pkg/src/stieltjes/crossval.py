"""Cross-validation of every gamma representation and round trip."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .altzeta import ACCELERATED, alt_zeta_derivatives
from .formulas import (
    SIGNED,
    alt_zeta_from_gamma_half,
    briggs_chowla_A_form,
    briggs_chowla_zeta_deriv,
    closure_identity_check,
    gamma_coffey,
    gamma_half,
    gamma_half_identity_check,
    gamma_kluyver,
    gamma_liang_todd,
    gamma_zhang_williams,
    resolve_gamma_half_sign,
)
from .numerics import PrecisionContext, agreement_tolerance

__all__ = ["CrossvalCell", "CrossValidationReport", "cross_validation_report", "LAMBDAS"]

LAMBDAS = (Fraction(1, 2), Fraction(1), Fraction(2))


@dataclass(frozen=True)
class CrossvalCell:
    check: str
    index: int
    detail: str
    discrepancy: object
    tolerance: object
    converged: bool

    @property
    def passed(self) -> bool:
        return self.converged and bool(self.discrepancy <= self.tolerance)


@dataclass(frozen=True)
class CrossValidationReport:
    m_max: int
    bits: int
    sign_variant: str
    cells: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.cells)

    @property
    def all_converged(self) -> bool:
        return all(c.converged for c in self.cells)

    def worst_by_check(self) -> dict[str, CrossvalCell]:
        """Per check name, the cell with the largest discrepancy/tolerance ratio."""
        worst: dict[str, CrossvalCell] = {}
        for c in self.cells:
            cur = worst.get(c.check)
            if cur is None or (not c.passed and cur.passed) or (
                c.passed == cur.passed and c.discrepancy * cur.tolerance > cur.discrepancy * c.tolerance
            ):
                worst[c.check] = c
        return worst


def _pair(check, index, detail, a, b, ctx) -> CrossvalCell:
    tol = agreement_tolerance(ctx, a.error_estimate, b.error_estimate)
    return CrossvalCell(check, index, detail, abs(a.value - b.value), tol, a.converged and b.converged)


def cross_validation_report(m_max: int, ctx: PrecisionContext, lambdas=LAMBDAS) -> CrossValidationReport:
    """Compute gamma_0..gamma_{m_max} every way and compare everything.

    Cells are ordered by check family, then index; the report is a pure
    function of ``(m_max, ctx)``.
    """
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")
    z = alt_zeta_derivatives(m_max + 1, ctx)
    coffey = [gamma_coffey(m, z, ctx) for m in range(m_max + 1)]
    cells: list[CrossvalCell] = []

    for m in range(m_max + 1):
        cells.append(_pair("coffey_vs_liang_todd", m, "", coffey[m], gamma_liang_todd(m, z, ctx), ctx))
    for m in range(m_max + 1):
        cells.append(_pair("coffey_vs_zhang_williams", m, "", coffey[m], gamma_zhang_williams(m, z, ctx), ctx))
    for m in range(m_max + 1):
        cells.append(_pair("coffey_vs_kluyver", m, "", coffey[m], gamma_kluyver(m, ctx), ctx))

    by_lambda = {}
    for lam in lambdas:
        za = alt_zeta_derivatives(m_max + 1, ctx, ACCELERATED, lam)
        by_lambda[lam] = [gamma_coffey(m, za, ctx) for m in range(m_max + 1)]
    base = lambdas[0]
    for lam in lambdas[1:]:
        for m in range(m_max + 1):
            cells.append(
                _pair("lambda_independence", m, f"{base}~{lam}", by_lambda[base][m], by_lambda[lam][m], ctx)
            )

    for l in range(m_max + 1):
        zl = _as_result(z, l)
        cells.append(_pair("briggs_chowla_round_trip", l, "", briggs_chowla_zeta_deriv(l, coffey, ctx), zl, ctx))
    for l in range(m_max + 1):
        bc = briggs_chowla_zeta_deriv(l, coffey, ctx)
        af = briggs_chowla_A_form(l, coffey, ctx)
        # same formula in two notations: only rounding may separate them
        cells.append(
            CrossvalCell(
                "briggs_chowla_notation",
                l,
                "",
                abs(bc.value - af.value),
                ctx.agreement_floor,
                bc.converged and coffey[l].converged,
            )
        )

    try:
        variant = resolve_gamma_half_sign(ctx)
        resolved = True
    except ArithmeticError:
        variant, resolved = SIGNED, False
    half0 = gamma_half(0, coffey, ctx)
    expected = coffey[0].value + 2 * ctx.log2
    cells.append(
        CrossvalCell(
            "digamma_half",
            0,
            "",
            abs(half0.value - expected),
            agreement_tolerance(ctx, half0.error_estimate, coffey[0].error_estimate),
            half0.converged,
        )
    )
    for l in range(m_max + 1):
        h = alt_zeta_from_gamma_half(l, coffey, ctx, variant)
        cell = _pair("half_argument_zeta", l, variant, h, _as_result(z, l), ctx)
        if not resolved:
            cell = CrossvalCell(cell.check, l, "unresolved", cell.discrepancy, cell.tolerance, False)
        cells.append(cell)
    for l in range(m_max + 1):
        chk = gamma_half_identity_check(l, coffey, ctx, variant)
        cells.append(
            CrossvalCell("gamma_half_identity", l, variant, chk.residual, chk.tolerance, coffey[l].converged and resolved)
        )
    for p in range(m_max + 1):
        chk = closure_identity_check(p, coffey, ctx)
        cells.append(CrossvalCell("closure_identity", p, "", chk.residual, chk.tolerance, coffey[p].converged))

    return CrossValidationReport(m_max, ctx.bits, variant, tuple(cells))


@dataclass(frozen=True)
class _Result:
    value: object
    error_estimate: object
    converged: bool


def _as_result(z, l) -> _Result:
    return _Result(z.values[l], z.error_estimates[l], z.converged[l])
