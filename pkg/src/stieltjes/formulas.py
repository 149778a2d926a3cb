"""Stieltjes constants from Bernoulli numbers and alternating-zeta derivatives.

Representations of gamma_m implemented here:

* ``coffey`` - finite Bernoulli/derivative sum (the production path);
* ``liang_todd`` - the older form with a separate pure-Bernoulli sum;
* ``zhang_williams`` - Leibniz-rule form built on the derivatives of
  ``(s-1)/(1-2**(1-s))`` at s = 1;
* ``kluyver`` - the Bernoulli-polynomial series over ``log k / log 2``.

The remaining functions run the inverse direction (derivatives rebuilt from
gamma values), the half-argument constants gamma_k(1/2) and the identities
that tie them together. All finite combinations propagate errors as
``sum |coefficient| * input_error`` plus a rounding allowance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .altzeta import AltZetaDerivatives, alt_zeta_derivatives, hasse_alt_zeta_deriv
from .combinatorics import DEFAULT_CACHE, BernoulliPolynomial, alternating_reciprocal_sum
from .numerics import (
    PrecisionContext,
    SeriesResult,
    agreement_tolerance,
    iterated_average,
    log_integer,
    to_mpf,
)

__all__ = [
    "COFFEY",
    "LIANG_TODD",
    "KLUYVER",
    "ZHANG_WILLIAMS",
    "StieltjesEstimate",
    "BriggsChowlaCoefficients",
    "CheckResult",
    "KluyverMismatch",
    "gamma_coffey",
    "gamma_liang_todd",
    "gamma_zhang_williams",
    "gamma_kluyver",
    "kluyver_term",
    "kluyver_generalized",
    "leibniz_kernel_derivative",
    "stieltjes_table",
    "briggs_chowla_zeta_deriv",
    "briggs_chowla_A_form",
    "gamma_half",
    "alt_zeta_from_gamma_half",
    "resolve_gamma_half_sign",
    "gamma_half_identity_check",
    "closure_identity_check",
]

COFFEY = "coffey"
LIANG_TODD = "liang_todd"
KLUYVER = "kluyver"
ZHANG_WILLIAMS = "zhang_williams"

SIGNED = "signed"
AS_PRINTED = "as_printed"


@dataclass(frozen=True)
class StieltjesEstimate:
    m: int
    value: object
    method: str
    error_estimate: object
    terms_used: int
    converged: bool = True


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a tolerance-controlled identity check; truthy when it passed."""

    name: str
    index: int
    passed: bool
    residual: object
    tolerance: object

    def __bool__(self) -> bool:
        return self.passed


class KluyverMismatch(ArithmeticError):
    """The series and finite forms of the extended Kluyver sum disagree."""


class _Combination:
    """Running sum of ``coef * value`` with propagated input error."""

    def __init__(self, ctx: PrecisionContext):
        self.ctx = ctx
        self.value = ctx.mp.zero
        self.error = ctx.mp.zero
        self.magnitude = ctx.mp.zero
        self.terms = 0

    def add(self, coef, value, error=0):
        t = coef * value
        self.value += t
        self.error += abs(coef) * error
        self.magnitude += abs(t)
        self.terms += 1

    def total_error(self):
        return self.error + self.ctx.rounding_slack(self.magnitude)


def _bernoulli(n: int) -> Fraction:
    return DEFAULT_CACHE[n]


def _require_orders(z: AltZetaDerivatives, top: int) -> None:
    if z.max_order < top:
        raise ValueError(f"need derivatives up to order {top}, have {z.max_order}")


def _estimate(m, acc: _Combination, method, z: AltZetaDerivatives, top: int) -> StieltjesEstimate:
    return StieltjesEstimate(
        m,
        acc.value,
        method,
        acc.total_error(),
        max(z.terms_used[: top + 1]),
        all(z.converged[: top + 1]),
    )


def gamma_coffey(m: int, z: AltZetaDerivatives, ctx: PrecisionContext) -> StieltjesEstimate:
    """gamma_m = -1/(m+1) sum_{l=0}^{m+1} C(m+1,l) B_{m-l+1} log(2)**(m-l) (-1)**l zeta_a^(l)(1).

    The l = m+1 term carries ``1/log 2``; negative powers are used as written.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    _require_orders(z, m + 1)
    L = ctx.log2
    acc = _Combination(ctx)
    for l in range(m + 2):
        coef = Fraction(-comb(m + 1, l) * (-1) ** l) * _bernoulli(m - l + 1) / (m + 1)
        if coef:
            acc.add(to_mpf(coef, ctx) * L ** (m - l), z[l], z.error_estimates[l])
    return _estimate(m, acc, COFFEY, z, m + 1)


def gamma_liang_todd(m: int, z: AltZetaDerivatives, ctx: PrecisionContext) -> StieltjesEstimate:
    """Both sums evaluated as printed; the Bernoulli sum is exact."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    _require_orders(z, m + 1)
    L = ctx.log2
    acc = _Combination(ctx)
    bern_sum = sum(
        (Fraction(comb(m + 1, l)) * _bernoulli(m - l + 1) / (l + 1) for l in range(1, m + 2)),
        Fraction(0),
    )
    acc.add(to_mpf(bern_sum / (m + 1), ctx), L ** (m + 1))
    for l in range(1, m + 2):
        coef = Fraction(comb(m + 1, l) * (-1) ** (l + 1)) * _bernoulli(m - l + 1) / (m + 1)
        if coef:
            acc.add(to_mpf(coef, ctx) * L ** (m - l), z[l], z.error_estimates[l])
    return _estimate(m, acc, LIANG_TODD, z, m + 1)


def leibniz_kernel_derivative(j: int, ctx: PrecisionContext):
    """j-th derivative of ``(s-1)/(1-2**(1-s))`` at s = 1: ``(-1)**j B_j log(2)**(j-1)``."""
    return (-1) ** j * to_mpf(_bernoulli(j), ctx) * ctx.log2 ** (j - 1)


def gamma_zhang_williams(m: int, z: AltZetaDerivatives, ctx: PrecisionContext) -> StieltjesEstimate:
    """(-1)**m (m+1) gamma_m = sum_l C(m+1,l) kernel^(m+1-l)(1) zeta_a^(l)(1)."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    _require_orders(z, m + 1)
    acc = _Combination(ctx)
    outer = ctx.mp.mpf((-1) ** m) / (m + 1)
    for l in range(m + 2):
        kernel = leibniz_kernel_derivative(m + 1 - l, ctx)
        if kernel:
            acc.add(outer * comb(m + 1, l) * kernel, z[l], z.error_estimates[l])
    return _estimate(m, acc, ZHANG_WILLIAMS, z, m + 1)


def kluyver_term(p: int, k: int, ctx: PrecisionContext, u=1):
    """k-th summand of the Kluyver series including its ``log(2)**p/(p+1)`` prefactor."""
    L = ctx.log2
    x = to_mpf(u, ctx) * log_integer(k, ctx) / L
    poly = BernoulliPolynomial.of_degree(p + 1)
    value = _eval_poly(poly, x, ctx)
    sign = -1 if k % 2 else 1
    return L**p / (p + 1) * sign * value / k


@lru_cache(maxsize=64)
def _mp_coeffs(degree: int, ctx: PrecisionContext) -> tuple:
    return tuple(to_mpf(c, ctx) for c in BernoulliPolynomial.of_degree(degree).coeffs)


def _eval_poly(poly: BernoulliPolynomial, x, ctx: PrecisionContext):
    coeffs = _mp_coeffs(poly.degree, ctx)
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _kluyver_series(p: int, u, ctx: PrecisionContext, num_terms: int, depth: int, tolerance) -> SeriesResult:
    mp = ctx.mp
    n_terms = min(num_terms, ctx.term_cap)
    L = ctx.log2
    scale = to_mpf(u, ctx) / L
    coeffs = _mp_coeffs(p + 1, ctx)
    partial = mp.zero
    tail = []
    keep_from = n_terms - depth
    biggest = mp.zero
    for k in range(1, n_terms + 1):
        x = scale * log_integer(k, ctx)
        b = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            b = b * x + c
        t = b / k
        partial = partial - t if k % 2 else partial + t
        biggest = max(biggest, abs(t))
        if k >= keep_from:
            tail.append(partial)
    prefactor = L**p / (p + 1)
    if n_terms < 2 * depth:
        # capped below what the averaging needs: report, never pretend
        return SeriesResult(prefactor * partial, mp.inf, n_terms, False)
    value, change = iterated_average(tail, ctx)
    estimate = prefactor * (2 * change + ctx.rounding_slack(biggest * n_terms))
    converged = estimate <= max(mp.mpf(tolerance), ctx.target_tolerance)
    return SeriesResult(prefactor * value, estimate, n_terms, bool(converged))


def gamma_kluyver(
    p: int,
    ctx: PrecisionContext,
    num_terms: int = 4000,
    averaging_depth: int = 24,
    tolerance: float = 1e-10,
) -> StieltjesEstimate:
    """gamma_p from the Bernoulli-polynomial series, summed by iterated averaging.

    The series converges only conditionally; the final value averages the
    last ``averaging_depth + 1`` partial sums. ``converged`` compares the
    estimate with ``max(tolerance, ctx.target_tolerance)``.
    """
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    res = _kluyver_series(p, 1, ctx, num_terms, averaging_depth, tolerance)
    return StieltjesEstimate(p, res.value, KLUYVER, res.error_estimate, res.terms_used, res.converged)


def kluyver_generalized(
    p: int,
    u,
    ctx: PrecisionContext,
    z: AltZetaDerivatives | None = None,
    num_terms: int = 4000,
    averaging_depth: int = 24,
    tolerance: float = 1e-10,
) -> SeriesResult:
    """c_p(u), the Kluyver series with ``B_{p+1}(u log k / log 2)``.

    Computed as the averaged series and as the finite derivative form
    ``-1/(p+1) sum_r C(p+1,r) B_r log(2)**(r-1) (-1)**(p+1-r) u**(p+1-r) zeta_a^(p+1-r)(1)``.
    Returns the finite form; raises :class:`KluyverMismatch` if the two
    disagree beyond their combined error estimates.
    """
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    if z is None:
        z = alt_zeta_derivatives(p + 1, ctx)
    _require_orders(z, p + 1)
    uu = to_mpf(u, ctx)
    L = ctx.log2
    acc = _Combination(ctx)
    for r in range(p + 2):
        coef = Fraction(-comb(p + 1, r) * (-1) ** (p + 1 - r)) * _bernoulli(r) / (p + 1)
        if coef:
            j = p + 1 - r
            acc.add(to_mpf(coef, ctx) * L ** (r - 1) * uu**j, z[j], z.error_estimates[j])
    finite = SeriesResult(acc.value, acc.total_error(), max(z.terms_used[: p + 2]), all(z.converged[: p + 2]))
    series = _kluyver_series(p, uu, ctx, num_terms, averaging_depth, tolerance)
    if series.converged and finite.converged:
        gap = abs(series.value - finite.value)
        if gap > agreement_tolerance(ctx, series.error_estimate, finite.error_estimate):
            raise KluyverMismatch(
                f"c_{p}(u={ctx.mp.nstr(uu, 15)}): series and finite forms differ by {ctx.mp.nstr(gap, 5)}"
            )
    return finite


_METHODS = {COFFEY: gamma_coffey, LIANG_TODD: gamma_liang_todd, ZHANG_WILLIAMS: gamma_zhang_williams}


def stieltjes_table(
    m_max: int, ctx: PrecisionContext, method: str = COFFEY, z: AltZetaDerivatives | None = None
) -> list[StieltjesEstimate]:
    """gamma_0 .. gamma_{m_max} by one method (Hasse derivatives unless ``z`` is given)."""
    if method == KLUYVER:
        return [gamma_kluyver(m, ctx) for m in range(m_max + 1)]
    if z is None:
        z = alt_zeta_derivatives(m_max + 1, ctx)
    fn = _METHODS[method]
    return [fn(m, z, ctx) for m in range(m_max + 1)]


def _gammas_upto(gammas: Sequence[StieltjesEstimate], top: int) -> Sequence[StieltjesEstimate]:
    if top >= len(gammas):
        raise ValueError(f"need gamma_0 .. gamma_{top}, got {len(gammas)} values")
    for i, g in enumerate(gammas[: top + 1]):
        if g.m != i:
            raise ValueError(f"gamma list out of order at position {i} (m={g.m})")
    return gammas


def _converged(gammas, top) -> bool:
    return all(g.converged for g in gammas[: top + 1])


def briggs_chowla_zeta_deriv(l: int, gammas: Sequence[StieltjesEstimate], ctx: PrecisionContext) -> SeriesResult:
    """zeta_a^(l)(1) rebuilt from gamma_0 .. gamma_{l-1}.

    ``(-1)**l zeta_a^(l)(1) = log(2)**(l+1)/(l+1) - sum_{k<l} C(l,k) gamma_k log(2)**(l-k)``.
    """
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    if l:
        _gammas_upto(gammas, l - 1)
    L = ctx.log2
    sign = (-1) ** l
    acc = _Combination(ctx)
    acc.add(ctx.mp.mpf(sign) / (l + 1), L ** (l + 1))
    for k in range(l):
        acc.add(-sign * comb(l, k) * L ** (l - k), gammas[k].value, gammas[k].error_estimate)
    return SeriesResult(acc.value, acc.total_error(), acc.terms, _converged(gammas, l - 1))


@dataclass(frozen=True)
class BriggsChowlaCoefficients:
    """A_n = (-1)**n gamma_n / n! for n >= 0, with the extra slot A_{-1} = 1.

    Stored offset by one: ``values[0]`` is A_{-1}.
    """

    values: tuple
    errors: tuple

    @classmethod
    def from_gammas(cls, gammas: Sequence[StieltjesEstimate], ctx: PrecisionContext) -> "BriggsChowlaCoefficients":
        vals = [ctx.mp.one]
        errs = [ctx.mp.zero]
        for g in gammas:
            w = ctx.mp.mpf((-1) ** g.m) / factorial(g.m)
            vals.append(w * g.value)
            errs.append(abs(w) * g.error_estimate)
        return cls(tuple(vals), tuple(errs))

    @property
    def max_index(self) -> int:
        return len(self.values) - 2

    def __getitem__(self, n: int):
        if n < -1 or n > self.max_index:
            raise IndexError(f"A_{n} not available")
        return self.values[n + 1]

    def error(self, n: int):
        return self.errors[n + 1]


def briggs_chowla_A_form(k: int, gammas: Sequence[StieltjesEstimate], ctx: PrecisionContext) -> SeriesResult:
    """zeta_a^(k)(1) = k! sum_{r=1}^{k+1} (-1)**(r+1) log(2)**r / r! * A_{k-r}."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k:
        _gammas_upto(gammas, k - 1)
    A = BriggsChowlaCoefficients.from_gammas(gammas[:k], ctx)
    L = ctx.log2
    acc = _Combination(ctx)
    for r in range(1, k + 2):
        coef = ctx.mp.mpf((-1) ** (r + 1) * factorial(k)) / factorial(r) * L**r
        acc.add(coef, A[k - r], A.error(k - r))
    return SeriesResult(acc.value, acc.total_error(), acc.terms, _converged(gammas, k - 1))


def gamma_half(k: int, gammas: Sequence[StieltjesEstimate], ctx: PrecisionContext) -> SeriesResult:
    """gamma_k(1/2) = -gamma_k + 2(-1)**k log(2)**(k+1)/(k+1) + 2 sum_j C(k,j)(-1)**j gamma_{k-j} log(2)**j."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    _gammas_upto(gammas, k)
    L = ctx.log2
    acc = _Combination(ctx)
    acc.add(-1, gammas[k].value, gammas[k].error_estimate)
    acc.add(ctx.mp.mpf(2 * (-1) ** k) / (k + 1), L ** (k + 1))
    for j in range(k + 1):
        g = gammas[k - j]
        acc.add(2 * (-1) ** j * comb(k, j) * L**j, g.value, g.error_estimate)
    return SeriesResult(acc.value, acc.total_error(), acc.terms, _converged(gammas, k))


def _half_bracket(l: int, gammas, ctx: PrecisionContext) -> SeriesResult:
    """(1/2) sum_{k<=l} C(l,k) log(2)**(l-k) [gamma_k(1/2) - gamma_k]."""
    L = ctx.log2
    acc = _Combination(ctx)
    for k in range(l + 1):
        h = gamma_half(k, gammas, ctx)
        w = ctx.mp.mpf(comb(l, k)) / 2 * L ** (l - k)
        acc.add(w, h.value, h.error_estimate)
        acc.add(-w, gammas[k].value, gammas[k].error_estimate)
    return SeriesResult(acc.value, acc.total_error(), acc.terms, _converged(gammas, l))


def alt_zeta_from_gamma_half(
    l: int, gammas: Sequence[StieltjesEstimate], ctx: PrecisionContext, sign_variant: str | None = None
) -> SeriesResult:
    """zeta_a^(l)(1) from the half-argument constants.

    ``sign_variant="signed"`` applies ``(-1)**l`` to the bracket sum,
    ``"as_printed"`` does not. ``None`` uses whichever variant
    :func:`resolve_gamma_half_sign` validated against the Hasse series.
    """
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    _gammas_upto(gammas, l)
    variant = sign_variant or resolve_gamma_half_sign(ctx)
    res = _half_bracket(l, gammas, ctx)
    if variant == SIGNED and l % 2:
        return SeriesResult(-res.value, res.error_estimate, res.terms_used, res.converged)
    if variant not in (SIGNED, AS_PRINTED):
        raise ValueError(f"unknown sign variant {variant!r}")
    return res


@lru_cache(maxsize=16)
def resolve_gamma_half_sign(ctx: PrecisionContext) -> str:
    """Pick the sign variant that reproduces the first Hasse derivative."""
    gammas = stieltjes_table(1, ctx)
    target = hasse_alt_zeta_deriv(1, ctx)
    matches = []
    for variant in (SIGNED, AS_PRINTED):
        got = alt_zeta_from_gamma_half(1, gammas, ctx, variant)
        tol = agreement_tolerance(ctx, got.error_estimate, target.error_estimate)
        if abs(got.value - target.value) <= tol:
            matches.append(variant)
    if len(matches) != 1:
        raise ArithmeticError(f"could not resolve half-argument sign variant (matches: {matches})")
    return matches[0]


def gamma_half_identity_check(
    l: int, gammas: Sequence[StieltjesEstimate], ctx: PrecisionContext, sign_variant: str | None = None
) -> CheckResult:
    """Identity obtained by inserting gamma_k(1/2) into the Briggs-Chowla form.

    With ``s = (-1)**l`` for the as-printed variant and ``s = 1`` for the
    signed one, it reads

        s * D + (1 - s) * A = (1 - s) log 2 / (l+1) + gamma_l log(2)**-l

    where ``D = sum_k C(l,k) log(2)**-k sum_j C(k,j) (-1)**j gamma_{k-j} log(2)**j``
    and ``A = sum_k C(l,k) gamma_k log(2)**-k``. The exact auxiliary sum
    ``sum_k C(l,k)(-1)**k/(k+1) = 1/(l+1)`` is checked as well.
    """
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    _gammas_upto(gammas, l)
    variant = sign_variant or resolve_gamma_half_sign(ctx)
    s = (-1) ** l if variant == AS_PRINTED else 1
    L = ctx.log2
    acc = _Combination(ctx)
    for k in range(l + 1):
        for j in range(k + 1):
            g = gammas[k - j]
            acc.add(s * (-1) ** j * comb(l, k) * comb(k, j) * L ** (j - k), g.value, g.error_estimate)
        acc.add((1 - s) * comb(l, k) * L ** (-k), gammas[k].value, gammas[k].error_estimate)
    acc.add(ctx.mp.mpf(-(1 - s)) / (l + 1), L)
    acc.add(-(L ** (-l)), gammas[l].value, gammas[l].error_estimate)
    tol = agreement_tolerance(ctx, acc.total_error())
    exact_ok = alternating_reciprocal_sum(l) == Fraction(1, l + 1)
    passed = bool(abs(acc.value) <= tol) and exact_ok and _converged(gammas, l)
    return CheckResult("gamma_half_identity", l, passed, abs(acc.value), tol)


def closure_identity_check(p: int, gammas: Sequence[StieltjesEstimate], ctx: PrecisionContext) -> CheckResult:
    """(p+1) gamma_p = sum_{r<=p} C(p+1,r) B_r sum_{m<=p-r} C(p+1-r,m) gamma_m log(2)**(p-m)."""
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    _gammas_upto(gammas, p)
    L = ctx.log2
    acc = _Combination(ctx)
    for r in range(p + 1):
        b = _bernoulli(r)
        if not b:
            continue
        for m in range(p - r + 1):
            coef = to_mpf(comb(p + 1, r) * comb(p + 1 - r, m) * b, ctx) * L ** (p - m)
            acc.add(coef, gammas[m].value, gammas[m].error_estimate)
    acc.add(-(p + 1), gammas[p].value, gammas[p].error_estimate)
    tol = agreement_tolerance(ctx, acc.total_error())
    passed = bool(abs(acc.value) <= tol) and _converged(gammas, p)
    return CheckResult("closure_identity", p, passed, abs(acc.value), tol)
