"""Reference values of gamma_0 and gamma_1 from their limit definitions.

    gamma_0 = lim (H_n - log n)
    gamma_1 = lim (sum_{k<=n} log(k)/k - log(n)**2 / 2)

The sequences are sampled at n = N, 2N, ..., K*N and extrapolated to
n -> infinity by generalized Richardson extrapolation: the samples are fitted
exactly by ``c + sum_j a_j phi_j(n)`` where the phi_j are the correction terms
of the Euler-Maclaurin expansion (powers of 1/n for gamma_0; powers of 1/n and
log(n)/n**j for gamma_1), and the constant c is the estimate.

Two configurations are run and their difference is reported as the error
estimate. Nothing here imports the package under test.

    python tools/limit_oracles.py > tests/fixtures/oracles.json
"""

from __future__ import annotations

import argparse
import json

import mpmath

DIGITS = 100
CONFIGS = ((400, 50), (500, 60))


def sampled_sequences(mp, step: int, count: int):
    nodes = [step * i for i in range(1, count + 1)]
    harmonic = mp.zero
    log_sum = mp.zero
    seq0, seq1 = [], []
    i = 0
    for k in range(1, nodes[-1] + 1):
        lk = mp.log(k)
        harmonic += mp.one / k
        log_sum += lk / k
        if k == nodes[i]:
            seq0.append(harmonic - lk)
            seq1.append(log_sum - lk**2 / 2)
            i += 1
    return nodes, seq0, seq1


def extrapolate(mp, nodes, values, basis):
    A = mp.matrix([[f(mp.mpf(n)) for f in basis] for n in nodes])
    return mp.lu_solve(A, mp.matrix(values))[0]


def gamma0_basis(mp, size):
    return [lambda n: mp.one] + [(lambda p: lambda n: n**-p)(p) for p in range(1, size)]


def gamma1_basis(mp, size):
    basis = [lambda n: mp.one]
    p = 1
    while len(basis) < size:
        basis.append((lambda p: lambda n: mp.log(n) * n**-p)(p))
        if len(basis) < size:
            basis.append((lambda p: lambda n: n**-p)(p))
        p += 1
    return basis


def run(step: int, count: int, prec: int = 1200):
    mp = mpmath.MPContext()
    mp.prec = prec
    nodes, seq0, seq1 = sampled_sequences(mp, step, count)
    g0 = extrapolate(mp, nodes, seq0, gamma0_basis(mp, count))
    g1 = extrapolate(mp, nodes, seq1, gamma1_basis(mp, count))
    return mp, g0, g1


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.parse_args(argv)
    (mp, a0, a1), (_, b0, b1) = (run(*c) for c in CONFIGS)
    record = {
        "provenance": {
            "script": "tools/limit_oracles.py",
            "method": "limit definitions sampled at n = N..K*N, generalized Richardson extrapolation",
            "configs": [{"N": n, "K": k} for n, k in CONFIGS],
            "working_bits": mp.prec,
        },
        "gamma0": {
            "value": mp.nstr(b0, DIGITS, strip_zeros=False),
            "config_spread": mp.nstr(abs(a0 - b0), 3),
        },
        "gamma1": {
            "value": mp.nstr(b1, DIGITS, strip_zeros=False),
            "config_spread": mp.nstr(abs(a1 - b1), 3),
        },
    }
    print(json.dumps(record, indent=2))


if __name__ == "__main__":
    main()
