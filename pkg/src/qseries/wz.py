"""The q-WZ pair behind the q-analogue of Guillera's pi^2 series.

``B_q(n, k)``, ``F_q(n, k)`` and ``G_q(n, k)`` are built as symbolic products
with the first index shifted by a rational offset ``a``.  Non-integer indices
go through the real-index Pochhammer symbol ``(x; q)_r = (x; q)_inf / (x q^r; q)_inf``,
so for ``a = 1/2`` the series live at scale 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .products import INF, QProduct, binom, q, qpoch
from .series import Comparison, LaurentSeries, SeriesError, compare


class InsufficientTerms(SeriesError):
    pass


def _index(x: Fraction):
    """Finite index when ``x`` is a nonnegative integer, real index otherwise."""
    return int(x) if x.denominator == 1 and x >= 0 else x


def b_expr(n: int, k: int, a=0) -> QProduct:
    """``B_q(n + a, k)`` as a product."""
    x = Fraction(n) + Fraction(a)
    num = qpoch(q(1), k, 2) ** 2 * qpoch(q(1), _index(x), 2) ** 3 * QProduct(1, 2 * x * x + 4 * x * k)
    den = qpoch(q(2 * x + 2), k, 2) ** 2 * qpoch(q(2), _index(x), 2) ** 3 * qpoch(-1, _index(2 * x), 1)
    return num / den


def f_expr(n: int, k: int, a=0) -> QProduct:
    """``F_q(n + a, k) = 4 (1 - q^(2n)) / (1 - q) * B_q``."""
    x = Fraction(n) + Fraction(a)
    return QProduct(4) * binom(q(2 * x)) / binom(q(1)) * b_expr(n, k, a)


def g_expr(n: int, k: int, a=0) -> QProduct:
    """``G_q(n + a, k)`` without its trinomial factor (see :func:`g_trinomial`)."""
    x = Fraction(n) + Fraction(a)
    den = binom(q(1)) * binom(q(2 * x, -1)) * binom(q(2 * x + 1, -1))
    return QProduct(4) / den * b_expr(n, k, a)


def g_trinomial(n: int, k: int, a=0) -> dict:
    """``1 + q^(2n+1) - 2 q^(4n+2k+1)`` keyed by exponent."""
    x = Fraction(n) + Fraction(a)
    poly: dict = {}
    for e, c in ((0, 1), (2 * x + 1, 1), (4 * x + 2 * k + 1, -2)):
        poly[e] = poly.get(e, 0) + c
    return poly


def _poly_series(poly: dict, order) -> LaurentSeries:
    return LaurentSeries.from_terms(poly, order)


@lru_cache(maxsize=8192)
def b_q(n: int, k: int, a=0, order=40) -> LaurentSeries:
    return b_expr(n, k, Fraction(a)).series(order)


@lru_cache(maxsize=8192)
def f_q(n: int, k: int, a=0, order=40) -> LaurentSeries:
    return f_expr(n, k, Fraction(a)).series(order)


@lru_cache(maxsize=8192)
def g_q(n: int, k: int, a=0, order=40) -> LaurentSeries:
    a = Fraction(a)
    body = g_expr(n, k, a)
    if body.is_zero():
        return LaurentSeries.zero(order)
    return body.series(order) * _poly_series(g_trinomial(n, k, a), order)


def wz_relation_check(n: int, k: int, a=0, order=40) -> Comparison:
    """``F(n+1,k) - F(n,k) == G(n,k+1) - G(n,k)`` exactly below ``q**order``."""
    a = Fraction(a)
    lhs = f_q(n + 1, k, a, order) - f_q(n, k, a, order)
    rhs = g_q(n, k + 1, a, order) - g_q(n, k, a, order)
    return compare(lhs, rhs, order)


@dataclass
class GridReport:
    a: Fraction
    nmax: int
    kmax: int
    order: int
    failures: list = field(default_factory=list)
    nmin: int = 0
    kmin: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "a": str(self.a),
            "n": [self.nmin, self.nmax],
            "k": [self.kmin, self.kmax],
            "order": self.order,
            "points": (self.nmax - self.nmin + 1) * (self.kmax - self.kmin + 1),
            "status": "verified" if self.ok else "mismatch",
            "failures": [
                {"n": n, "k": k, "exponent": str(c.exponent), "lhs": str(c.lhs), "rhs": str(c.rhs)}
                for n, k, c in self.failures
            ],
        }


def wz_grid(a=0, nmax: int = 10, kmax: int = 10, order=40, nmin: int = 0, kmin: int = 0) -> GridReport:
    report = GridReport(Fraction(a), nmax, kmax, order, nmin=nmin, kmin=kmin)
    for n in range(nmin, nmax + 1):
        for k in range(kmin, kmax + 1):
            c = wz_relation_check(n, k, a, order)
            if not c:
                report.failures.append((n, k, c))
    return report


# -- telescoping -------------------------------------------------------------------


def g_valuation(n: int, k: int, a) -> Fraction | None:
    return g_expr(n, k, Fraction(a)).valuation()


def f_valuation(n: int, k: int, a) -> Fraction | None:
    return f_expr(n, k, Fraction(a)).valuation()


def _terms_needed(valuation, order, limit=10_000) -> int:
    """Smallest count ``N`` with ``valuation(N) >= order`` (valuations increase with the index)."""
    for m in range(limit):
        v = valuation(m)
        if v is None or v >= order:
            return m
    raise InsufficientTerms("valuation bound never clears the window")


@dataclass
class Telescope:
    a: Fraction
    order: int
    n_terms: int
    k_terms: int
    g_sum: LaurentSeries
    f_sum: LaurentSeries
    comparison: Comparison

    @property
    def ok(self) -> bool:
        return bool(self.comparison)


def telescope_check(a, n_terms: int | None = None, k_terms: int | None = None, order=40) -> Telescope:
    """``sum_n G_q(n+a, 0) == sum_k F_q(a, k)`` with both partial sums covering the window.

    The first omitted index on either side must have valuation at least
    ``order``; the valuations ``2(n+a)^2`` and ``2a^2 + 4ak`` only grow
    afterwards, so the dropped tails cannot reach the window.
    """
    a = Fraction(a)
    need_n = _terms_needed(lambda n: g_valuation(n, 0, a), order)
    need_k = _terms_needed(lambda k: f_valuation(0, k, a), order) if a else 0
    n_terms = need_n if n_terms is None else n_terms
    k_terms = need_k if k_terms is None else k_terms
    if n_terms < need_n:
        raise InsufficientTerms(f"G-sum needs {need_n} terms to reach q^{order}, got {n_terms}")
    if k_terms < need_k:
        raise InsufficientTerms(f"F-sum needs {need_k} terms to reach q^{order}, got {k_terms}")
    scale = a.denominator
    g_sum = LaurentSeries.zero(order, scale)
    for n in range(n_terms):
        g_sum = g_sum + g_q(n, 0, a, order)
    f_sum = LaurentSeries.zero(order, scale)
    for k in range(k_terms):
        f_sum = f_sum + f_q(0, k, a, order)
    return Telescope(a, order, n_terms, k_terms, g_sum, f_sum, compare(g_sum, f_sum, order))


def g_tail_valuation(k: int, a) -> Fraction:
    """Lowest valuation over ``n`` of ``G_q(n+a, k)``; it grows like ``4ak``."""
    vals = [g_valuation(n, k, a) for n in range(4)]
    return min(v for v in vals if v is not None)


def telescope_common_factor() -> QProduct:
    """``2 q^(1/2) / (1-q) * (q;q^2)_inf^6 / (q^2;q^2)_inf^6``, shared by ``F_q(1/2, k)``."""
    return QProduct(2, Fraction(1, 2)) / binom(q(1)) * qpoch(q(1), INF, 2) ** 6 / qpoch(q(2), INF, 2) ** 6


def q2_from_telescoping(order) -> LaurentSeries:
    """``1/2 * sum_n G_q(n+1/2, 0)`` divided by the common factor of ``F_q(1/2, k)``.

    Equal to both sides of the q-analogue of Guillera's series when the pair
    relation and telescoping hold.
    """
    a = Fraction(1, 2)
    common = telescope_common_factor()
    n_terms = _terms_needed(lambda n: (g_expr(n, 0, a) / common).valuation(), order)
    total = LaurentSeries.zero(order)
    for n in range(n_terms):
        body = QProduct(Fraction(1, 2)) * g_expr(n, 0, a) / common
        total = total + body.series(order) * _poly_series(g_trinomial(n, 0, a), order)
    return total.reduce_scale()


def f_half_closed_form(k: int) -> QProduct:
    """``F_q(1/2, k) = 2 q^(1/2)/(1-q) * q^(2k)/(1-q^(2k+1))^2 * (q;q^2)_inf^6/(q^2;q^2)_inf^6``."""
    return telescope_common_factor() * QProduct(1, 2 * k) / binom(q(2 * k + 1), 2)


def g_half_closed_form(n: int) -> QProduct:
    """``G_q(n+1/2, 0)`` without its trinomial, in the shape obtained by cancelling real-index symbols."""
    return (
        QProduct(4, 2 * n * n + 2 * n + Fraction(1, 2)) / binom(q(1))
        * qpoch(q(1), INF, 2) ** 3 * qpoch(q(2 * n + 3), INF, 2) ** 3
        / (qpoch(-1, 2 * n + 3) * qpoch(q(2 * n + 2), INF, 2) ** 3 * qpoch(q(2), INF, 2) ** 3)
    )


# -- the classical pair ----------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalWZTerm:
    n: int
    k: int
    B: Fraction
    F: Fraction
    G: Fraction


def classical_pair(n: int, k: int) -> ClassicalWZTerm:
    """Guillera's pair ``F = 8n B``, ``G = (6n+4k+1) B`` in exact rationals."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    f = math.factorial
    B = Fraction(f(2 * k) ** 2 * f(2 * n) ** 3, 2 ** (8 * n + 4 * k) * f(n + k) ** 2 * f(k) ** 2 * f(n) ** 4)
    return ClassicalWZTerm(n, k, B, 8 * n * B, (6 * n + 4 * k + 1) * B)


def f_q_value(n: int, k: int, q0: float, a=0) -> float:
    return f_expr(n, k, Fraction(a)).evaluate(q0)


def g_q_value(n: int, k: int, q0: float, a=0) -> float:
    a = Fraction(a)
    poly = sum(float(c) * q0 ** float(e) for e, c in g_trinomial(n, k, a).items())
    return g_expr(n, k, a).evaluate(q0) * poly


@dataclass
class ClassicalLimit:
    n: int
    k: int
    eps: list
    f_errors: list
    g_errors: list

    @property
    def monotone(self) -> bool:
        def dec(xs):
            return all(b < a or b == 0.0 for a, b in zip(xs, xs[1:]))

        return dec(self.f_errors) and dec(self.g_errors)


def classical_limit_check(n: int, k: int, eps_list=(0.1, 0.05, 0.01)) -> ClassicalLimit:
    """Distance of ``F_q(n,k)``, ``G_q(n,k)`` at ``q = 1 - eps`` from the classical pair."""
    exact = classical_pair(n, k)
    fe, ge = [], []
    for eps in eps_list:
        q0 = 1.0 - eps
        fe.append(abs(f_q_value(n, k, q0) - float(exact.F)))
        ge.append(abs(g_q_value(n, k, q0) - float(exact.G)))
    return ClassicalLimit(n, k, list(eps_list), fe, ge)
