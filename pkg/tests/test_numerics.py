import threading
from fractions import Fraction

import pytest

from stieltjes.altzeta import hasse_alt_zeta_deriv
from stieltjes.numerics import (
    PrecisionContext,
    agreement_tolerance,
    iterated_average,
    log_integer,
    sum_until_stable,
    to_mpf,
)


def test_context_defaults():
    ctx = PrecisionContext()
    assert ctx.bits == 256 and ctx.guard_bits == 64
    assert ctx.working_bits == 320
    assert ctx.mp.prec == 320
    assert ctx.term_cap == 3200
    assert ctx.target_tolerance == ctx.mp.ldexp(1, -256)


@pytest.mark.parametrize(
    "kwargs", [{"bits": 0}, {"guard_bits": 32}, {"tolerance": Fraction(0)}, {"tolerance": -1}, {"max_terms": 0}]
)
def test_context_validation(kwargs):
    with pytest.raises(ValueError):
        PrecisionContext(**kwargs)


def test_contexts_do_not_share_precision():
    a, b = PrecisionContext(bits=64), PrecisionContext(bits=512)
    assert a.mp.prec == 128 and b.mp.prec == 576
    assert abs(a.mp.mpf(1) / 3 - b.mp.mpf(1) / 3) > b.mp.ldexp(1, -200)


def test_explicit_tolerance():
    ctx = PrecisionContext(tolerance=Fraction(1, 10**30))
    assert abs(ctx.target_tolerance - ctx.mp.mpf(10) ** -30) < ctx.mp.mpf(10) ** -120


def test_to_mpf_rounds_fraction():
    ctx = PrecisionContext(bits=64)
    x = to_mpf(Fraction(1, 3), ctx)
    assert abs(x * 3 - 1) <= ctx.mp.ldexp(1, -ctx.working_bits + 1)


def test_log_integer_one_is_exact_zero(ctx):
    assert log_integer(1, ctx) == 0


def test_log_two_against_series(ctx, ln2_oracle):
    err = abs(log_integer(2, ctx) - to_mpf(ln2_oracle, ctx))
    assert err <= ctx.mp.ldexp(1, -ctx.working_bits + 1)


def test_log_four_is_twice_log_two(ctx):
    ulp = ctx.mp.ldexp(1, -ctx.working_bits + 2)
    assert abs(log_integer(4, ctx) - 2 * log_integer(2, ctx)) <= 2 * ulp


def test_log_integer_rejects_zero(ctx):
    with pytest.raises(ValueError):
        log_integer(0, ctx)


def test_sum_geometric(ctx):
    res = sum_until_stable(lambda k: ctx.mp.ldexp(1, -k - 1), ctx)
    assert res.converged
    assert abs(res.value - 1) <= res.error_estimate
    assert res.error_estimate <= ctx.target_tolerance


def test_sum_all_zero(ctx):
    res = sum_until_stable(lambda k: ctx.mp.zero, ctx)
    assert res.converged and res.value == 0 and res.terms_used == 2


def test_sum_harmonic_does_not_converge():
    ctx = PrecisionContext(bits=64, max_terms=50)
    res = sum_until_stable(lambda k: ctx.mp.one / (k + 1), ctx)
    assert not res.converged
    assert res.terms_used == 50


def test_sum_is_deterministic(ctx):
    term = lambda k: ctx.mp.mpf(-1) ** k / (k + 1) ** 3 / 2**k  # noqa: E731
    a, b = sum_until_stable(term, ctx), sum_until_stable(term, ctx)
    assert a.value == b.value and a.error_estimate == b.error_estimate and a.terms_used == b.terms_used


def test_sum_in_threads_is_deterministic():
    ctx = PrecisionContext(bits=128)
    term = lambda k: ctx.mp.mpf(3) ** -k / (k + 1)  # noqa: E731
    ref = sum_until_stable(term, ctx).value
    got = []
    threads = [threading.Thread(target=lambda: got.append(sum_until_stable(term, ctx).value)) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert got == [ref] * 6


def test_iterated_average_by_hand(ctx):
    value, change = iterated_average([ctx.mp.one, ctx.mp.mpf(0.5)], ctx)
    assert value == ctx.mp.mpf(0.75)
    assert change == ctx.mp.mpf(0.25)


def test_iterated_average_needs_two(ctx):
    with pytest.raises(ValueError):
        iterated_average([ctx.mp.one], ctx)


def test_agreement_tolerance_floor(ctx):
    assert agreement_tolerance(ctx) == ctx.mp.ldexp(1, 8 - 256)
    big = ctx.mp.mpf(1e-10)
    assert agreement_tolerance(ctx, big, big) == 2 * big


@pytest.mark.parametrize("n", [0, 1, 3, 6])
def test_precision_increase_moves_value_within_estimate(n):
    lo, hi = PrecisionContext(bits=128), PrecisionContext(bits=192)
    a, b = hasse_alt_zeta_deriv(n, lo), hasse_alt_zeta_deriv(n, hi)
    assert a.converged and b.converged
    assert abs(a.value - b.value) <= a.error_estimate + lo.mp.ldexp(1, -128)
