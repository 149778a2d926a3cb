"""Precision policy and summation kernels on top of mpmath.

Each :class:`PrecisionContext` owns a private ``mpmath.MPContext`` so that
evaluations at different precisions never touch mpmath's global state.
Values produced under a context are that context's ``mpf`` numbers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable

import mpmath

__all__ = [
    "PrecisionContext",
    "SeriesResult",
    "log_integer",
    "sum_until_stable",
    "iterated_average",
    "agreement_tolerance",
    "to_mpf",
]


@dataclass(frozen=True)
class PrecisionContext:
    """Evaluation policy: requested bits, guard bits, tolerance and term cap.

    ``tolerance`` is absolute and defaults to ``2**-bits``; ``max_terms``
    defaults to ``10 * working_bits``.
    """

    bits: int = 256
    guard_bits: int = 64
    tolerance: Fraction | None = None
    max_terms: int | None = None

    def __post_init__(self):
        if self.bits < 1:
            raise ValueError(f"bits must be positive, got {self.bits}")
        if self.guard_bits < 64:
            raise ValueError(f"guard_bits must be >= 64, got {self.guard_bits}")
        if self.tolerance is not None:
            object.__setattr__(self, "tolerance", Fraction(self.tolerance))
            if self.tolerance <= 0:
                raise ValueError("tolerance must be positive")
        if self.max_terms is not None and self.max_terms < 1:
            raise ValueError(f"max_terms must be positive, got {self.max_terms}")

    @property
    def working_bits(self) -> int:
        return self.bits + self.guard_bits

    @property
    def term_cap(self) -> int:
        return self.max_terms if self.max_terms is not None else 10 * self.working_bits

    @cached_property
    def mp(self) -> mpmath.ctx_mp.MPContext:
        ctx = mpmath.MPContext()
        ctx.prec = self.working_bits
        return ctx

    @cached_property
    def target_tolerance(self):
        if self.tolerance is None:
            return self.mp.ldexp(1, -self.bits)
        return self.mp.mpf(self.tolerance.numerator) / self.tolerance.denominator

    @cached_property
    def agreement_floor(self):
        """Smallest discrepancy ever treated as significant: 2**(8 - bits)."""
        return self.mp.ldexp(1, 8 - self.bits)

    @cached_property
    def log2(self):
        return log_integer(2, self)

    def rounding_slack(self, magnitude):
        """Allowance for accumulated rounding in a short combination of size ``magnitude``."""
        return abs(magnitude) * self.mp.ldexp(1, 8 - self.working_bits)

    def with_(self, **changes) -> "PrecisionContext":
        return replace(self, **changes)


@dataclass(frozen=True)
class SeriesResult:
    value: object
    error_estimate: object
    terms_used: int
    converged: bool
    magnitudes: tuple = field(default=(), repr=False, compare=False)


def to_mpf(x, ctx: PrecisionContext):
    """Round an int, Fraction or mpmath number into ``ctx``'s precision."""
    if isinstance(x, Fraction):
        return ctx.mp.mpf(x.numerator) / x.denominator
    return ctx.mp.mpf(x)


@lru_cache(maxsize=1 << 16)
def log_integer(k: int, ctx: PrecisionContext):
    if k < 1:
        raise ValueError(f"log_integer needs k >= 1, got {k}")
    if k == 1:
        return ctx.mp.zero
    return ctx.mp.log(k)


def sum_until_stable(
    term: Callable[[int], object],
    ctx: PrecisionContext,
    *,
    group: int = 2,
    tail_factor=1,
    start: int = 0,
) -> SeriesResult:
    """Add ``term(start), term(start+1), ...`` in order until the tail is small.

    The error estimate is ``tail_factor`` times the largest magnitude among
    the last ``group`` terms. Summation stops as soon as that estimate is
    within ``ctx.target_tolerance``; hitting ``ctx.term_cap`` first yields a
    result with ``converged=False``.
    """
    mp = ctx.mp
    tol = ctx.target_tolerance
    total = mp.zero
    recent: deque = deque(maxlen=group)
    mags = []
    estimate = mp.inf
    for i in range(ctx.term_cap):
        t = term(start + i)
        total += t
        mag = abs(t)
        recent.append(mag)
        mags.append(mag)
        estimate = tail_factor * max(recent)
        if len(recent) == group and estimate <= tol:
            return SeriesResult(total, estimate, i + 1, True, tuple(mags))
    return SeriesResult(total, estimate, ctx.term_cap, False, tuple(mags))


def iterated_average(partial_sums: list, ctx: PrecisionContext) -> tuple[object, object]:
    """Repeated pairwise means of the trailing partial sums.

    Given ``depth + 1`` consecutive partial sums, averages ``depth`` times and
    returns ``(value, change)`` where ``change`` is half the spread of the
    last two pre-final values, i.e. the size of the final averaging step.
    """
    row = list(partial_sums)
    if len(row) < 2:
        raise ValueError("iterated averaging needs at least two partial sums")
    half = ctx.mp.mpf(0.5)
    while len(row) > 2:
        row = [(x + y) * half for x, y in zip(row, row[1:])]
    return (row[0] + row[1]) * half, abs(row[1] - row[0]) * half


def agreement_tolerance(ctx: PrecisionContext, *errors):
    """Sum of the operands' error estimates, floored at ``2**(8 - bits)``."""
    return max(sum(errors, ctx.mp.zero), ctx.agreement_floor)
