"""Stieltjes constants from Bernoulli numbers: every classical representation,
computed in multiprecision and cross-checked against each other."""

from .altzeta import (
    AltZetaDerivatives,
    accelerated_alt_zeta_deriv,
    alt_zeta_derivatives,
    direct_series_oracle,
    hasse_alt_zeta_deriv,
)
from .combinatorics import BernoulliCache, BernoulliPolynomial, bernoulli_number, binomial
from .crossval import cross_validation_report
from .formulas import (
    StieltjesEstimate,
    gamma_coffey,
    gamma_kluyver,
    gamma_liang_todd,
    gamma_zhang_williams,
    kluyver_generalized,
    stieltjes_table,
)
from .numerics import PrecisionContext, SeriesResult

__version__ = "0.1.0"
