import csv
import io
import json
from fractions import Fraction

import mpmath
import pytest

from stieltjes.numerics import PrecisionContext
from stieltjes.output import OutputRecord, format_decimal, format_error, render


def test_decimal_sign_and_digits():
    ctx = PrecisionContext(bits=128)
    assert format_decimal(ctx.log2, 10) == "+0.6931471806"
    assert format_decimal(-ctx.log2, 4) == "-0.6931"
    assert format_decimal(0, 3) == "+0.000"


def test_negative_zero_after_rounding_is_unsigned():
    assert format_decimal(mpmath.mpf("-1e-30"), 5) == "+0.00000"


def test_round_half_even():
    # 0.125 and 0.375 are exact binary fractions
    assert format_decimal(mpmath.mpf("0.125"), 2) == "+0.12"
    assert format_decimal(mpmath.mpf("0.375"), 2) == "+0.38"
    assert format_decimal(Fraction(5, 2), 0) == "+2"


def test_large_values_go_scientific():
    assert format_decimal(mpmath.mpf(12345678), 4) == "+1.235e+7"
    assert format_decimal(mpmath.mpf(999999), 1) == "+999999.0"


def test_exact_binary_expansion():
    # 2^-60 terminates after 60 decimals, so nothing may be lost
    out = format_decimal(mpmath.ldexp(1, -60), 60)
    assert out.endswith("867361737988403547205962240695953369140625")
    assert Fraction(out[1:]) == Fraction(1, 2**60)


def test_error_format():
    assert format_error(mpmath.mpf("1.2345e-70")) == "1.23e-70"
    assert format_error(0) == "0"
    assert format_error(mpmath.inf) == "inf"
    assert format_error(Fraction(1, 3), significant=2) == "3.3e-1"


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        OutputRecord("plot", "+1")


RECORDS = [
    OutputRecord("gamma", "+0.5772", "1.00e-70", True, m=0, method="coffey"),
    OutputRecord("zeta_deriv", "+0.1598", "2.00e-70", True, l=1, method="accelerated", lam="1/2"),
    OutputRecord("identity_check", "0", "0", True, True, check="rubenstein", m=40),
]


def test_csv_and_json_carry_the_same_strings():
    rows = list(csv.DictReader(io.StringIO(render(RECORDS, "csv"))))
    objs = json.loads(render(RECORDS, "json"))
    assert len(rows) == len(objs) == 3
    for row, obj in zip(rows, objs):
        for key, value in obj.items():
            expected = ("true" if value else "false") if isinstance(value, bool) else str(value)
            assert row[key] == expected
        assert all(row[k] == "" for k in row if k not in obj)


def test_plain_has_header_and_one_line_per_record():
    lines = render(RECORDS, "plain").splitlines()
    assert lines[0].split()[0] == "kind"
    assert len(lines) == 4
    assert "lambda" in lines[0]


def test_unknown_format():
    with pytest.raises(ValueError):
        render(RECORDS, "xml")


def test_negative_values_keep_all_digits():
    x = -mpmath.ldexp(1, -60)
    assert Fraction(format_decimal(x, 60)) == -Fraction(1, 2**60)
    ctx = PrecisionContext(bits=256)
    assert format_decimal(-ctx.log2, 50) == "-" + format_decimal(ctx.log2, 50)[1:]
