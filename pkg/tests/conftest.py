import json
from fractions import Fraction
from pathlib import Path

import pytest

from stieltjes.numerics import PrecisionContext

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(bits=256)


@pytest.fixture(scope="session")
def ctx512():
    return PrecisionContext(bits=512)


@pytest.fixture(scope="session")
def oracle_values():
    """gamma_0, gamma_1 frozen from tools/limit_oracles.py (limit definitions + Richardson)."""
    data = json.loads((FIXTURES / "oracles.json").read_text())
    return {"gamma0": data["gamma0"]["value"], "gamma1": data["gamma1"]["value"]}


def ln2_series(terms: int = 600) -> Fraction:
    """log 2 = sum 1/(k 2**k), exact partial sum; tail below 2**-terms."""
    return sum((Fraction(1, k * 2**k) for k in range(1, terms + 1)), Fraction(0))


@pytest.fixture(scope="session")
def ln2_oracle():
    return ln2_series()
