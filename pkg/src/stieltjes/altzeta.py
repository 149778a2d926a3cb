"""Derivatives of the alternating zeta function at s = 1.

Three independent routes:

* :func:`hasse_alt_zeta_deriv` - the globally convergent binomial-transform
  series with outer weights ``2**-(k+1)``;
* :func:`accelerated_alt_zeta_deriv` - the same transform with a rational
  parameter ``lam > 0`` (outer ratio ``lam/(1+lam)``), which reduces to the
  Hasse series at ``lam = 1``;
* :func:`direct_series_oracle` - iterated averaging of the partial sums of
  ``sum (-1)**(k+1) log(k)**n / k``. Slow and low precision, kept as a
  cross-check that shares no code with the transform path.

Inner sums ``sum_j C(k,j) (-1)**j lam**-j f(j)`` are carried out in exact
integer arithmetic on fixed-point samples of ``f(j) = log(j+1)**n/(j+1)``.
The outer weight ``q/(p+q)**(k+1)`` (with ``lam = p/q``) exactly offsets the
binomial growth of the inner coefficients, so each outer term carries at
most one fixed-point ulp of rounding regardless of ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .numerics import (
    PrecisionContext,
    SeriesResult,
    iterated_average,
    log_integer,
    sum_until_stable,
)

__all__ = [
    "AltZetaDerivatives",
    "hasse_alt_zeta_deriv",
    "accelerated_alt_zeta_deriv",
    "direct_series_oracle",
    "alt_zeta_derivatives",
]

HASSE = "hasse"
ACCELERATED = "accelerated"
ORACLE = "direct_oracle"


@dataclass(frozen=True)
class AltZetaDerivatives:
    """``values[l]`` holds the l-th derivative of the alternating zeta at 1."""

    max_order: int
    values: tuple
    error_estimates: tuple
    method: str
    converged: tuple
    terms_used: tuple
    lam: Fraction | None = None

    def __getitem__(self, l: int):
        return self.values[l]

    @property
    def all_converged(self) -> bool:
        return all(self.converged)

    def truncated(self, max_order: int) -> "AltZetaDerivatives":
        n = max_order + 1
        return AltZetaDerivatives(
            max_order,
            self.values[:n],
            self.error_estimates[:n],
            self.method,
            self.converged[:n],
            self.terms_used[:n],
            self.lam,
        )


class _FixedPointSamples:
    """Lazily grown table of round(2**frac_bits * log(j+1)**n / (j+1))."""

    def __init__(self, n: int, frac_bits: int, ctx: PrecisionContext):
        self.n = n
        self.frac_bits = frac_bits
        self.ctx = ctx
        self.table: list[int] = []
        self.peak = ctx.mp.zero

    def __getitem__(self, j: int) -> int:
        mp = self.ctx.mp
        while len(self.table) <= j:
            i = len(self.table)
            f = log_integer(i + 1, self.ctx) ** self.n / (i + 1)
            self.peak = max(self.peak, abs(f))
            self.table.append(int(mp.nint(mp.ldexp(f, self.frac_bits))))
        return self.table[j]


def _binomial_transform(n: int, lam: Fraction, ctx: PrecisionContext) -> SeriesResult:
    """sum_k q/(p+q)**(k+1) * sum_j C(k,j) (-1)**j q**j p**(k-j) f(j), lam = p/q.

    Equals ``(-1)**n`` times the n-th derivative at s = 1.
    """
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    p, q = lam.numerator, lam.denominator
    mp = ctx.mp
    frac_bits = ctx.working_bits + 16
    samples = _FixedPointSamples(n, frac_bits, ctx)
    scale = mp.ldexp(1, -frac_bits)
    # signed coefficients of (p - q x)**k, advanced one row per outer term
    row: list[int] = [1]

    def term(k: int):
        nonlocal row
        if k > 0:
            prev = row
            row = [p * prev[0]]
            row.extend(p * prev[j] - q * prev[j - 1] for j in range(1, k))
            row.append(-q * prev[k - 1])
        acc = sum(w * samples[j] for j, w in enumerate(row))
        return mp.mpf(q * acc) / (p + q) ** (k + 1) * scale

    # tail of a geometric series with ratio lam/(1+lam) is lam times the last term
    res = sum_until_stable(term, ctx, group=3, tail_factor=2 * max(1, lam))
    # one fixed-point ulp per outer term plus the sample rounding itself
    rounding = res.terms_used * (scale + (samples.peak + 1) * mp.ldexp(1, 4 - ctx.working_bits))
    return SeriesResult(res.value, res.error_estimate + rounding, res.terms_used, res.converged, res.magnitudes)


@lru_cache(maxsize=512)
def hasse_alt_zeta_deriv(n: int, ctx: PrecisionContext) -> SeriesResult:
    """n-th derivative of the alternating zeta function at s = 1."""
    if n < 0:
        raise ValueError(f"derivative order must be >= 0, got {n}")
    res = _binomial_transform(n, Fraction(1), ctx)
    if n % 2:
        return SeriesResult(-res.value, res.error_estimate, res.terms_used, res.converged, res.magnitudes)
    return res


@lru_cache(maxsize=512)
def accelerated_alt_zeta_deriv(n: int, lam, ctx: PrecisionContext) -> SeriesResult:
    """Signed derivative ``(-1)**n * zeta_a^(n)(1)`` from the lam-weighted series.

    This is the quantity ``a_n log(2)**n`` of the accelerated representation;
    for every admissible ``lam`` it matches the Hasse value times ``(-1)**n``.
    """
    if n < 1:
        raise ValueError(f"derivative order must be >= 1, got {n}")
    return _binomial_transform(n, Fraction(lam), ctx)


def direct_series_oracle(
    n: int,
    ctx: PrecisionContext,
    num_terms: int = 10_000,
    averaging_depth: int = 20,
    tolerance: float = 1e-10,
) -> SeriesResult:
    """Averaged partial sums of the defining series for the n-th derivative.

    Keeps the last ``averaging_depth + 1`` partial sums of
    ``sum_{k=1}^{num_terms} (-1)**(k+1) log(k)**n / k`` and averages them
    pairwise ``averaging_depth`` times. Converged means the final averaging
    step moved the value by at most ``max(tolerance, ctx.target_tolerance)``.
    """
    if n < 0:
        raise ValueError(f"derivative order must be >= 0, got {n}")
    if averaging_depth < 1 or num_terms < 2 * averaging_depth:
        raise ValueError(
            f"need num_terms >= 2 * averaging_depth >= 2, got {num_terms} and {averaging_depth}"
        )
    mp = ctx.mp
    keep_from = num_terms - averaging_depth
    partial = mp.zero
    tail = []
    for k in range(1, num_terms + 1):
        t = log_integer(k, ctx) ** n / k if n else mp.one / k
        partial = partial + t if k % 2 else partial - t
        if k >= keep_from:
            tail.append(partial)
    value, change = iterated_average(tail, ctx)
    estimate = 2 * change + ctx.rounding_slack(abs(tail[-1]) + 1)
    if n % 2:
        value = -value
    converged = estimate <= max(mp.mpf(tolerance), ctx.target_tolerance)
    return SeriesResult(value, estimate, num_terms, bool(converged))


@lru_cache(maxsize=128)
def alt_zeta_derivatives(
    max_order: int,
    ctx: PrecisionContext,
    method: str = HASSE,
    lam=Fraction(1),
) -> AltZetaDerivatives:
    """Derivatives of orders ``0..max_order`` by one method.

    ``method`` is ``"hasse"``, ``"accelerated"`` (order 0 taken as log 2) or
    ``"direct_oracle"``.
    """
    if max_order < 0:
        raise ValueError(f"max_order must be >= 0, got {max_order}")
    results = []
    for l in range(max_order + 1):
        if method == HASSE:
            results.append(hasse_alt_zeta_deriv(l, ctx))
        elif method == ACCELERATED:
            if l == 0:
                results.append(SeriesResult(ctx.log2, ctx.rounding_slack(ctx.log2), 1, True))
            else:
                r = accelerated_alt_zeta_deriv(l, Fraction(lam), ctx)
                sign = -1 if l % 2 else 1
                results.append(SeriesResult(sign * r.value, r.error_estimate, r.terms_used, r.converged))
        elif method == ORACLE:
            results.append(direct_series_oracle(l, ctx))
        else:
            raise ValueError(f"unknown method {method!r}")
    return AltZetaDerivatives(
        max_order,
        tuple(r.value for r in results),
        tuple(r.error_estimate for r in results),
        method,
        tuple(r.converged for r in results),
        tuple(r.terms_used for r in results),
        Fraction(lam) if method == ACCELERATED else None,
    )
