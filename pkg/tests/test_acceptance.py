"""Acceptance gate: seven criteria, one PASS/FAIL line each.

Run alone with ``python3 -m pytest tests/test_acceptance.py -v``; the
criterion lines are written straight to the terminal, bypassing capture.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction
from math import comb

import pytest

from stieltjes.altzeta import ACCELERATED, alt_zeta_derivatives, hasse_alt_zeta_deriv
from stieltjes.combinatorics import (
    DEFAULT_CACHE,
    bernoulli_symmetry_check,
    full_range_moment_sum,
    negative_bernoulli_sum_check,
    riordan_forward,
    riordan_inverse,
    rubenstein_identity_check,
    truncated_moment_sum,
)
from stieltjes.formulas import (
    alt_zeta_from_gamma_half,
    briggs_chowla_A_form,
    briggs_chowla_zeta_deriv,
    closure_identity_check,
    gamma_coffey,
    gamma_half,
    gamma_half_identity_check,
    gamma_kluyver,
    gamma_liang_todd,
    resolve_gamma_half_sign,
    stieltjes_table,
)
from stieltjes.numerics import PrecisionContext, agreement_tolerance


class Gate:
    """Collects named sub-checks for one criterion and reports them on one line."""

    def __init__(self, capsys, number, title, budget_s):
        self.capsys, self.number, self.title, self.budget = capsys, number, title, budget_s
        self.failures = []
        self.start = time.perf_counter()

    def check(self, name, ok, detail=""):
        if not ok:
            self.failures.append(f"{name} {detail}".strip())

    def finish(self):
        elapsed = time.perf_counter() - self.start
        self.check("runtime", elapsed < self.budget, f"{elapsed:.1f}s >= {self.budget}s")
        verdict = "PASS" if not self.failures else "FAIL"
        line = f"[{verdict}] criterion {self.number}: {self.title} ({elapsed:.2f}s)"
        if self.failures:
            line += " | " + "; ".join(self.failures[:5])
        with self.capsys.disabled():
            print("\n" + line)
        assert not self.failures, line


def test_criterion_1_exact_identities(capsys):
    gate = Gate(capsys, 1, "exact identity suite, n in 1..40, 100 Riordan round trips", 5)
    DEFAULT_CACHE.extend(41)
    for n in range(1, 41):
        gate.check("full_range_moment", full_range_moment_sum(n) == 0, f"m={n}")
        gate.check("truncated_moment", truncated_moment_sum(n) == -DEFAULT_CACHE[n], f"m={n}")
        gate.check("negative_bernoulli_sum", negative_bernoulli_sum_check(n), f"p={n}")
        gate.check("rubenstein", rubenstein_identity_check(n), f"n={n}")
        gate.check("bernoulli_symmetry", bernoulli_symmetry_check(n), f"n={n}")
        # restated independently of the library helper
        direct = sum((comb(n, k) * DEFAULT_CACHE[k] for k in range(n + 1)), Fraction(0))
        gate.check("binomial_bernoulli_sum", direct == (-1) ** n * DEFAULT_CACHE[n], f"n={n}")
    rng = random.Random(20241015)
    for trial in range(100):
        seq = [Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**9)) for _ in range(rng.randint(1, 30))]
        gate.check("riordan_inverse_forward", riordan_inverse(riordan_forward(seq)) == seq, f"trial={trial}")
        gate.check("riordan_forward_inverse", riordan_forward(riordan_inverse(seq)) == seq, f"trial={trial}")
    gate.finish()


def _anchor_gate(gate, ctx, oracle_values, tol):
    mp = ctx.mp
    g0_ref, g1_ref = mp.mpf(oracle_values["gamma0"]), mp.mpf(oracle_values["gamma1"])
    L = ctx.log2
    z = alt_zeta_derivatives(2, ctx)
    g0, g1 = gamma_coffey(0, z, ctx), gamma_coffey(1, z, ctx)
    for name, est, ref in (("gamma_0", g0, g0_ref), ("gamma_1", g1, g1_ref)):
        delta = abs(est.value - ref)
        gate.check(name, est.converged and delta <= tol, f"|d|={mp.nstr(delta, 3)}")
    r1 = abs(-z[1] - (L**2 / 2 - g0_ref * L))
    gate.check("first_derivative_residual", r1 <= tol, f"{mp.nstr(r1, 3)}")
    r2 = abs(z[2] - (L**3 / 3 - g0_ref * L**2 - 2 * g1_ref * L))
    gate.check("second_derivative_residual", r2 <= tol, f"{mp.nstr(r2, 3)}")
    return g0, g1, g0_ref, g1_ref


def test_criterion_2_oracle_anchors(capsys, ctx, oracle_values):
    gate = Gate(capsys, 2, "oracle anchors at 256 bits, |d| <= 1e-25", 10)
    g0, g1, g0_ref, g1_ref = _anchor_gate(gate, ctx, oracle_values, ctx.mp.mpf("1e-25"))
    # the reported estimate should cover the true error (oracles good to ~1e-95)
    slack = ctx.mp.mpf("1e-90")
    gate.check("gamma_0_estimate_honest", abs(g0.value - g0_ref) <= g0.error_estimate + slack)
    gate.check("gamma_1_estimate_honest", abs(g1.value - g1_ref) <= g1.error_estimate + slack)
    gate.finish()


def test_criterion_3_equivalence(capsys, ctx):
    gate = Gate(capsys, 3, "equivalence of representations, m in 0..8", 20)
    mp = ctx.mp
    z = alt_zeta_derivatives(9, ctx)
    coffey = [gamma_coffey(m, z, ctx) for m in range(9)]
    for m in range(9):
        a, b = coffey[m], gamma_liang_todd(m, z, ctx)
        d = abs(a.value - b.value)
        tol = agreement_tolerance(ctx, a.error_estimate, b.error_estimate)
        gate.check("coffey_vs_liang_todd", a.converged and b.converged and d <= tol, f"m={m} {mp.nstr(d, 3)}")
        k = gamma_kluyver(m, ctx)
        d = abs(a.value - k.value)
        ok = k.converged and d <= k.error_estimate and d <= mp.mpf("1e-8")
        gate.check("coffey_vs_kluyver", ok, f"m={m} {mp.nstr(d, 3)} est={mp.nstr(k.error_estimate, 3)}")
    notation_tol = mp.ldexp(1, -248)
    for l in range(9):
        bc = briggs_chowla_zeta_deriv(l, coffey, ctx)
        h = hasse_alt_zeta_deriv(l, ctx)
        d = abs(bc.value - h.value)
        tol = agreement_tolerance(ctx, bc.error_estimate, h.error_estimate)
        gate.check("round_trip", bc.converged and d <= tol, f"l={l} {mp.nstr(d, 3)}")
        d = abs(briggs_chowla_A_form(l, coffey, ctx).value - bc.value)
        gate.check("A_form", d <= notation_tol, f"l={l} {mp.nstr(d, 3)}")
    gate.finish()


def test_criterion_4_lambda_independence(capsys, ctx):
    gate = Gate(capsys, 4, "lambda independence, lambda in {1/2, 1, 2}, m in 0..5", 20)
    by_lambda = {}
    for lam in (Fraction(1, 2), Fraction(1), Fraction(2)):
        z = alt_zeta_derivatives(6, ctx, ACCELERATED, lam)
        by_lambda[lam] = [gamma_coffey(m, z, ctx) for m in range(6)]
    lams = list(by_lambda)
    for i, la in enumerate(lams):
        for lb in lams[i + 1 :]:
            for m in range(6):
                a, b = by_lambda[la][m], by_lambda[lb][m]
                d = abs(a.value - b.value)
                tol = agreement_tolerance(ctx, a.error_estimate, b.error_estimate)
                ok = a.converged and b.converged and d <= tol
                gate.check("lambda", ok, f"{la}~{lb} m={m} {ctx.mp.nstr(d, 3)}")
    gate.finish()


def test_criterion_5_half_argument_suite(capsys, ctx):
    gate = Gate(capsys, 5, "half-argument suite, l and p in 0..8", 20)
    mp = ctx.mp
    gammas = stieltjes_table(9, ctx)
    d = abs(gamma_half(0, gammas, ctx).value - (gammas[0].value + 2 * ctx.log2))
    gate.check("digamma_half", d <= mp.mpf("1e-25"), mp.nstr(d, 3))
    variant = resolve_gamma_half_sign(ctx)
    for l in range(9):
        gate.check("gamma_half_identity", gamma_half_identity_check(l, gammas, ctx, variant), f"l={l}")
        gate.check("closure", closure_identity_check(l, gammas, ctx), f"p={l}")
        got, h = alt_zeta_from_gamma_half(l, gammas, ctx, variant), hasse_alt_zeta_deriv(l, ctx)
        d = abs(got.value - h.value)
        tol = agreement_tolerance(ctx, got.error_estimate, h.error_estimate)
        gate.check("alt_zeta_from_gamma_half", d <= tol, f"l={l} {mp.nstr(d, 3)} ({variant})")
    gate.finish()


def test_criterion_6_precision_scaling(capsys, ctx512, oracle_values):
    gate = Gate(capsys, 6, "oracle anchors repeated at 512 bits, |d| <= 1e-60", 10)
    _anchor_gate(gate, ctx512, oracle_values, ctx512.mp.mpf("1e-60"))
    gate.finish()


def test_criterion_7_cli_determinism(capsys):
    gate = Gate(capsys, 7, "CLI crossval byte-identical, verify --suite all exits 0", 30)
    argv = [sys.executable, "-m", "stieltjes", "crossval", "--m-max", "5", "--bits", "256"]
    first = subprocess.run(argv, capture_output=True)
    second = subprocess.run(argv, capture_output=True)
    gate.check("crossval_identical", first.stdout == second.stdout and first.stdout != b"")
    gate.check("crossval_exit", first.returncode == 0 == second.returncode, f"{first.returncode}")
    verify = subprocess.run([sys.executable, "-m", "stieltjes", "verify", "--suite", "all"], capture_output=True)
    gate.check("verify_exit", verify.returncode == 0, f"exit={verify.returncode}")
    gate.finish()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
