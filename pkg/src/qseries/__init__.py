"""Exact truncated q-series, q-products and basic hypergeometric sums.

Everything lives in the ring of Laurent series in ``t = q**(1/s)`` with
rational coefficients, truncated at a known order, so identities are checked
by exact coefficient comparison.
"""

from .series import (
    Comparison,
    InsufficientOrder,
    LaurentSeries,
    NotInvertible,
    ScaleMismatch,
    SeriesError,
    compare,
    series_sum,
)
from .products import (
    INF,
    NonTermination,
    PochSpec,
    PoleError,
    QMonomial,
    QProduct,
    TruncationBudgetExceeded,
    binom,
    poch,
    product_side,
    psi_product,
    psi_sum,
    q,
    qpoch,
)
from .hyper import PhiSpec, phi, term_sum
from .catalog import lambert_expand, verify, verify_all
from .wz import telescope_check, wz_relation_check
from .numerics import classical_series, q_limit

__version__ = "0.1.0"
