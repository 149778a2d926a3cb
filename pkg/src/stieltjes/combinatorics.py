"""Exact rational combinatorics: Bernoulli numbers and polynomials, the
Riordan inverse pair and the binomial/Bernoulli identity checks.

Everything here works on :class:`fractions.Fraction` and compares with exact
equality. Bernoulli numbers use the convention ``B_1 = -1/2``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

__all__ = [
    "Rational",
    "BernoulliCache",
    "BernoulliPolynomial",
    "SequencePair",
    "DEFAULT_CACHE",
    "binomial",
    "bernoulli_number",
    "bernoulli_poly_eval",
    "full_range_moment_sum",
    "truncated_moment_sum",
    "riordan_forward",
    "riordan_inverse",
    "riordan_pair",
    "rubenstein_identity_check",
    "negative_bernoulli_sum_check",
    "bernoulli_symmetry_check",
    "alternating_reciprocal_sum",
]

Rational = Fraction


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside ``0 <= k <= n`` (so C(n, -1) = 0)."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


class BernoulliCache:
    """Memoized exact Bernoulli numbers ``B_0 .. B_N``.

    Values come from the recurrence ``sum_{k=0}^{n} C(n+1, k) B_k = 0``
    (n >= 1), solved for ``B_n``. Extension is guarded by a lock; reads of
    already computed entries never block.
    """

    def __init__(self, n_max: int = 0):
        self._values: list[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()
        if n_max > 0:
            self.extend(n_max)

    def __len__(self) -> int:
        return len(self._values)

    @property
    def n_max(self) -> int:
        return len(self._values) - 1

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(self._values)

    def extend(self, n_max: int) -> None:
        if n_max < len(self._values):
            return
        with self._lock:
            values = list(self._values)
            for n in range(len(values), n_max + 1):
                acc = sum(comb(n + 1, k) * values[k] for k in range(n))
                values.append(-acc / (n + 1))
            # publish in one assignment so readers never see a partial list
            self._values = values

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError(f"Bernoulli index must be >= 0, got {n}")
        if n >= len(self._values):
            self.extend(n)
        return self._values[n]


DEFAULT_CACHE = BernoulliCache(64)


def bernoulli_number(n: int, cache: BernoulliCache | None = None) -> Fraction:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return (cache or DEFAULT_CACHE)[n]


@dataclass(frozen=True)
class BernoulliPolynomial:
    """B_m(x) in coefficient form; ``coeffs[l]`` multiplies ``x**l``."""

    degree: int
    coeffs: tuple[Fraction, ...]

    @classmethod
    def of_degree(cls, m: int, cache: BernoulliCache | None = None) -> "BernoulliPolynomial":
        if m < 0:
            raise ValueError(f"degree must be >= 0, got {m}")
        cache = cache or DEFAULT_CACHE
        return cls(m, tuple(comb(m, l) * cache[m - l] for l in range(m + 1)))

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a Fraction, int or mpmath number."""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def integral_unit(self) -> Fraction:
        """Exact integral over [0, 1]."""
        return sum((c / (l + 1) for l, c in enumerate(self.coeffs)), Fraction(0))


def bernoulli_poly_eval(m: int, x, cache: BernoulliCache | None = None):
    return BernoulliPolynomial.of_degree(m, cache)(x)


def full_range_moment_sum(m: int, cache: BernoulliCache | None = None) -> Fraction:
    """sum_{l=0}^{m} C(m,l) B_{m-l}/(l+1), the integral of B_m over [0, 1].

    Zero for every m >= 1.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    cache = cache or DEFAULT_CACHE
    return sum((Fraction(comb(m, l)) * cache[m - l] / (l + 1) for l in range(m + 1)), Fraction(0))


def truncated_moment_sum(m: int, cache: BernoulliCache | None = None) -> Fraction:
    """The same sum started at l = 1; equals -B_m."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    cache = cache or DEFAULT_CACHE
    return sum((Fraction(comb(m, l)) * cache[m - l] / (l + 1) for l in range(1, m + 1)), Fraction(0))


def riordan_forward(b: Sequence[Fraction]) -> list[Fraction]:
    """a_n = sum_k C(n,k) b_k / (n-k+1)."""
    if not b:
        raise ValueError("riordan_forward needs a non-empty sequence")
    b = [Fraction(x) for x in b]
    return [
        sum((Fraction(comb(n, k)) * b[k] / (n - k + 1) for k in range(n + 1)), Fraction(0))
        for n in range(len(b))
    ]


def riordan_inverse(a: Sequence[Fraction], cache: BernoulliCache | None = None) -> list[Fraction]:
    """b_n = sum_k C(n,k) B_{n-k} a_k, the inverse of :func:`riordan_forward`."""
    if not a:
        raise ValueError("riordan_inverse needs a non-empty sequence")
    cache = cache or DEFAULT_CACHE
    a = [Fraction(x) for x in a]
    return [
        sum((comb(n, k) * cache[n - k] * a[k] for k in range(n + 1)), Fraction(0))
        for n in range(len(a))
    ]


@dataclass(frozen=True)
class SequencePair:
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError("sequence pair needs equal lengths")

    def is_riordan_pair(self, cache: BernoulliCache | None = None) -> bool:
        return list(self.a) == riordan_forward(self.b) and list(self.b) == riordan_inverse(self.a, cache)


def riordan_pair(b: Sequence[Fraction]) -> SequencePair:
    return SequencePair(tuple(riordan_forward(b)), tuple(Fraction(x) for x in b))


def rubenstein_identity_check(n: int, cache: BernoulliCache | None = None) -> bool:
    """sum_{k=1}^{n} C(n,k) B_{n-k} (-1)^k B_k == -n B_n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    cache = cache or DEFAULT_CACHE
    lhs = sum((comb(n, k) * cache[n - k] * (-1) ** k * cache[k] for k in range(1, n + 1)), Fraction(0))
    return lhs == -n * cache[n]


def negative_bernoulli_sum_check(p: int, cache: BernoulliCache | None = None) -> bool:
    """sum_{k=0}^{p-1} C(p,k) B_k/(p-k+1) == -B_p."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    cache = cache or DEFAULT_CACHE
    lhs = sum((Fraction(comb(p, k)) * cache[k] / (p - k + 1) for k in range(p)), Fraction(0))
    return lhs == -cache[p]


def bernoulli_symmetry_check(n: int, cache: BernoulliCache | None = None) -> bool:
    """sum_{k=0}^{n} C(n,k) B_k == (-1)^n B_n, i.e. B_n(1) = (-1)^n B_n."""
    cache = cache or DEFAULT_CACHE
    return sum((comb(n, k) * cache[k] for k in range(n + 1)), Fraction(0)) == (-1) ** n * cache[n]


def alternating_reciprocal_sum(l: int) -> Fraction:
    """sum_{k=0}^{l} C(l,k) (-1)^k / (k+1), which equals 1/(l+1)."""
    return sum((Fraction((-1) ** k * comb(l, k), k + 1) for k in range(l + 1)), Fraction(0))
