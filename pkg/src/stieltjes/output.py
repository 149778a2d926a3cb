"""Output records and their plain/CSV/JSON renderings.

Numbers are converted to :class:`decimal.Decimal` exactly (a binary float
``man * 2**exp`` is ``man * 5**-exp`` scaled by ``10**exp``) and only then
rounded, half to even, so every rendering of a record carries the same
string.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

__all__ = ["OutputRecord", "COLUMNS", "format_decimal", "format_error", "render"]

COLUMNS = ("kind", "m", "l", "method", "lambda", "u", "check", "value", "error_estimate", "converged", "passed")
KINDS = ("gamma", "zeta_deriv", "identity_check", "crossval_cell")

_FIXED_LIMIT = Decimal(10) ** 6


def _exact_decimal(x) -> Decimal | None:
    """Exact Decimal for ints and mpf values, Fractions to 2000 digits; None for inf/nan."""
    if isinstance(x, int):
        return Decimal(x)
    if isinstance(x, Fraction):
        with localcontext() as c:
            c.prec = 2000
            return Decimal(x.numerator) / Decimal(x.denominator)
    mpf_tuple = getattr(x, "_mpf_", None)
    if mpf_tuple is None:
        return Decimal(repr(x))
    sign, man, exp, _ = mpf_tuple
    if man == 0 and exp != 0:
        return None
    if exp >= 0:
        value = Decimal(int(man) << exp)
    else:
        scaled = int(man) * 5 ** (-exp)
        with localcontext() as c:
            c.prec = len(str(scaled)) + 2
            value = Decimal(scaled).scaleb(exp)
    return value.copy_negate() if sign else value


def format_decimal(x, digits: int) -> str:
    """Explicit sign; fixed notation with ``digits`` decimals below 1e6, else scientific."""
    d = _exact_decimal(x)
    if d is None:
        return "nan" if x != x else ("+inf" if x > 0 else "-inf")
    with localcontext() as c:
        c.prec = max(digits + 50, len(d.as_tuple().digits) + 10)
        c.rounding = ROUND_HALF_EVEN
        if abs(d) < _FIXED_LIMIT:
            q = d.quantize(Decimal(1).scaleb(-digits))
            if q == 0:
                q = abs(q)
            return format(q, "+f")
        return format(d, f"+.{max(digits, 1) - 1}e")


def format_error(x, significant: int = 3) -> str:
    """Error estimates are tiny, so always scientific with a few significant digits."""
    d = _exact_decimal(x)
    if d is None:
        return "inf"
    if d == 0:
        return "0"
    with localcontext() as c:
        c.prec = len(d.as_tuple().digits) + 10
        c.rounding = ROUND_HALF_EVEN
        return format(d, f".{significant - 1}e")


@dataclass(frozen=True)
class OutputRecord:
    kind: str
    value: str
    error_estimate: str = ""
    converged: bool | None = None
    passed: bool | None = None
    m: int | None = None
    l: int | None = None
    method: str | None = None
    lam: str | None = None
    u: str | None = None
    check: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown record kind {self.kind!r}")

    def fields(self) -> dict:
        raw = {
            "kind": self.kind,
            "m": self.m,
            "l": self.l,
            "method": self.method,
            "lambda": self.lam,
            "u": self.u,
            "check": self.check,
            "value": self.value,
            "error_estimate": self.error_estimate,
            "converged": self.converged,
            "passed": self.passed,
        }
        return {k: v for k, v in raw.items() if v is not None and v != ""}


def _columns(records) -> list[str]:
    present = set()
    for r in records:
        present.update(r.fields())
    return [c for c in COLUMNS if c in present]


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


def render(records: list[OutputRecord], fmt: str = "plain") -> str:
    if fmt == "json":
        return json.dumps([r.fields() for r in records], indent=2) + "\n"
    cols = _columns(records)
    rows = [[_cell(r.fields().get(c)) for c in cols] for r in records]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt != "plain":
        raise ValueError(f"unknown format {fmt!r}")
    widths = [max([len(c)] + [len(row[i]) for row in rows]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"
