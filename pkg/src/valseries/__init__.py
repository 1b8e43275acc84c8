"""Exact computations around the q-adic valuation and its generating series.

Submodules:

- ``valseries.core``: rationals, Z[Y]/(Y^m - 1), F_p, truncated series, exact kernels
- ``valseries.valuation``: nu_q(n) by division, by the closed arithmetic term, by the series
- ``valseries.series``: V_q and V_{q,k}, geometric-block identities, tail bounds, twists, segments
- ``valseries.roth``: convergents A_n/B_n and exponent tests
- ``valseries.holonomy``: recurrence and algebraic-relation guessers, collision witnesses
- ``valseries.automata``: the valuation DFAO, period doubling, minimization, export
- ``valseries.verify``: the acceptance harness behind ``valseries verify-all``
"""

from .valuation import hamming_weight, nu, nu_arithmetic_term, nu_uniform_series
from .series import SeriesSpec, coeffs, eval_partial, partial_fraction_sum
from .roth import RothInstance, convergent, q_threshold
from .automata import build_valuation_dfao, period_doubling, run

__version__ = "0.1.0"
