"""Representation counts behind the Lambert-series proof.

``t2(n)`` counts ``(x, y)`` in N^2 with ``T_x + 4 T_y = n`` and ``r2(m)`` counts
lattice points on ``x^2 + y^2 = m``.  Each has a brute-force count and a
divisor-sum formula; the two are never computed from each other.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

from .products import triangular
from .series import LaurentSeries, compare

__all__ = [
    "DivisorSumResult",
    "triangular",
    "t2_brute",
    "t2_formula",
    "t2_brute_table",
    "r2_brute",
    "r2_formula",
    "r2_brute_table",
    "lambert_expand",
    "lambert_coefficient_check",
    "t2_table_csv",
]


@dataclass(frozen=True)
class DivisorSumResult:
    n: int
    brute: int
    formula: int

    @property
    def match(self) -> bool:
        return self.brute == self.formula


def _divisors_below_sqrt(m: int):
    """Divisors d of m with d*d < m, by trial division."""
    d = 1
    while d * d < m:
        if m % d == 0:
            yield d
        d += 1


def _chi4(d: int) -> int:
    # (-1)^((d-1)/2) for odd d
    return 1 if d % 4 == 1 else -1


def t2_brute(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    count = 0
    x = 0
    while triangular(x) <= n:
        rest = n - triangular(x)
        y = 0
        while 4 * triangular(y) <= rest:
            if 4 * triangular(y) == rest:
                count += 1
            y += 1
        x += 1
    return count


def t2_brute_table(nmax: int) -> list[int]:
    """``[t2_brute(0), ..., t2_brute(nmax)]`` from a single enumeration of the region."""
    counts = [0] * (nmax + 1)
    x = 0
    while triangular(x) <= nmax:
        y = 0
        while triangular(x) + 4 * triangular(y) <= nmax:
            counts[triangular(x) + 4 * triangular(y)] += 1
            y += 1
        x += 1
    return counts


def t2_formula(n: int) -> int:
    """Signed count of the divisors of ``8n+5`` below its square root."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(_chi4(d) for d in _divisors_below_sqrt(8 * n + 5))


def r2_brute(m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    count = 0
    r = math.isqrt(m)
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            if x * x + y * y == m:
                count += 1
    return count


def r2_brute_table(mmax: int) -> list[int]:
    """Lattice-point counts ``r2(0..mmax)`` by enumerating the disc once."""
    counts = [0] * (mmax + 1)
    r = math.isqrt(mmax)
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            s = x * x + y * y
            if s <= mmax:
                counts[s] += 1
    return counts


def r2_formula(m: int) -> int:
    """``4 * sum over odd divisors d of m of (-1)^((d-1)/2)``."""
    if m < 1:
        raise ValueError("m must be positive")
    total = 0
    d = 1
    while d * d <= m:
        if m % d == 0:
            e = m // d
            if d % 2:
                total += _chi4(d)
            if e != d and e % 2:
                total += _chi4(e)
        d += 1
    return 4 * total


def lambert_expand(kind: str, order: int) -> LaurentSeries:
    """Expand a Lambert series through its geometric double sum.

    ``pi2``: sum_k (-1)^k sum_m q^(k(k+3)/2 + (2k+1)m)
    ``pi1``: sum_k (-1)^k sum_m q^(k + (2k+1)m)
    ``q2rhs``: 1/2 sum_n sum_m (m+1) q^(2n + (2n+1)m)
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    coeffs = [0] * order
    if kind in ("pi1", "pi2"):
        k = 0
        while True:
            start = k * (k + 3) // 2 if kind == "pi2" else k
            if start >= order:
                break
            sign = -1 if k % 2 else 1
            for e in range(start, order, 2 * k + 1):
                coeffs[e] += sign
            k += 1
        return LaurentSeries(coeffs, 0, order)
    if kind == "q2rhs":
        n = 0
        while 2 * n < order:
            for m, e in enumerate(range(2 * n, order, 2 * n + 1)):
                coeffs[e] += m + 1
            n += 1
        return LaurentSeries([Fraction(c, 2) for c in coeffs], 0, order)
    raise KeyError(f"unknown Lambert series {kind!r}")


def lambert_coefficient_check(order: int):
    """Coefficients of the pi2 double sum against ``t2_formula``; returns a Comparison."""
    expansion = lambert_expand("pi2", order)
    predicted = LaurentSeries([t2_formula(n) for n in range(order)], 0, order)
    return compare(expansion, predicted, order)


def t2_results(nmax: int) -> list[DivisorSumResult]:
    brute = t2_brute_table(nmax)
    return [DivisorSumResult(n, brute[n], t2_formula(n)) for n in range(nmax + 1)]


def t2_table_csv(nmax: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "t2_brute", "t2_formula", "match"])
    for r in t2_results(nmax):
        w.writerow([r.n, r.brute, r.formula, str(r.match).lower()])
    return buf.getvalue()
