"""Floating-point checks: classical series for pi and pi^2, and q -> 1 limits."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .products import INF, PRODUCT_EXPRESSIONS, QProduct, TruncationBudgetExceeded, binom, q, qpoch

__all__ = [
    "CLASSICAL_TARGETS",
    "classical_series",
    "classical_terms",
    "LimitExperiment",
    "LIMIT_EXPRESSIONS",
    "q_limit",
    "summand_limit_check",
    "half_binomial_check",
]


# -- classical series ----------------------------------------------------------


def _leibniz(k):
    return Fraction((-1) ** k, 2 * k + 1)


def _zeilberger(k):
    k += 1
    return Fraction(21 * k - 8, k**3 * comb(2 * k, k) ** 3)


def _guillera(k):
    k += 1
    return Fraction((3 * k - 1) * 16**k, k**3 * comb(2 * k, k) ** 3)


def _ram(k):
    return Fraction((6 * k + 1) * comb(2 * k, k) ** 3, 256**k)


def _ram_alt(k):
    return Fraction((-1) ** k * (6 * k + 1) * comb(2 * k, k) ** 3, 512**k)


def _conjectural(k):
    k += 1
    return Fraction((10 * k - 3) * 8**k, k**3 * comb(2 * k, k) ** 2 * comb(3 * k, k))


def _q2_limit(n):
    return Fraction((3 * n + 2) * 2 ** (4 * n) * factorial(n) ** 6, 4 * factorial(2 * n + 1) ** 3)


_CLASSICAL: dict[str, Callable[[int], Fraction]] = {
    "leibniz": _leibniz,
    "zeilberger": _zeilberger,
    "guillera": _guillera,
    "ram-6n1": _ram,
    "ram-6n1-alt": _ram_alt,
    "sun-conj": _conjectural,
    "q2-limit": _q2_limit,
}

CLASSICAL_TARGETS = {
    "leibniz": math.pi / 4,
    "zeilberger": math.pi**2 / 6,
    "guillera": math.pi**2 / 2,
    "ram-6n1": 4 / math.pi,
    "ram-6n1-alt": 2 * math.sqrt(2) / math.pi,
    "sun-conj": math.pi**2 / 2,
    "q2-limit": math.pi**2 / 16,
}


def classical_terms(name: str, terms: int) -> Fraction:
    """Exact partial sum of the first ``terms`` terms."""
    try:
        term = _CLASSICAL[name]
    except KeyError:
        raise KeyError(f"unknown classical series {name!r}") from None
    if terms < 1:
        raise ValueError("terms must be at least 1")
    return sum((term(k) for k in range(terms)), Fraction(0))


def classical_series(name: str, terms: int) -> float:
    return float(classical_terms(name, terms))


def half_binomial_check(nmax: int = 50) -> bool:
    """``(1/2)_n / n! == C(2n, n) / 4**n`` exactly for ``n <= nmax``."""
    rising = Fraction(1)
    for n in range(nmax + 1):
        if rising / factorial(n) != Fraction(comb(2 * n, n), 4**n):
            return False
        rising *= Fraction(1, 2) + n
    return True


# -- q -> 1 limits ------------------------------------------------------------------


def _product(expr: QProduct) -> Callable[[float, float, int], float]:
    return lambda q0, tol, budget: expr.evaluate(q0, tol, budget)


def _depth(q0: float, tol: float, exp_of: Callable[[int], float], budget: int) -> int:
    # first index whose q-exponent pushes q0**e below tol
    bound = math.log(tol) / math.log(q0)
    n = 0
    while exp_of(n) < bound:
        n += 1
        if n > budget:
            raise TruncationBudgetExceeded(f"sum needs more than {budget} terms at q={q0}")
    return n + 1


def _pi2_lhs_value(q0, tol, budget):
    n = _depth(q0, tol, lambda k: k * (k + 3) / 2, budget)
    s = math.fsum((-1) ** k * q0 ** (k * (k + 3) / 2) / (1 - q0 ** (2 * k + 1)) for k in range(n))
    return (1 - q0**2) * s


def _q2_value(q0, tol, budget):
    n = _depth(q0, tol, lambda k: 2 * k, budget)
    s = math.fsum(q0 ** (2 * k) / (1 - q0 ** (2 * k + 1)) ** 2 for k in range(n))
    return (1 - q0) ** 2 * s / 2


def _pi2_gamma_value(q0, tol, budget):
    rhs = PRODUCT_EXPRESSIONS["pi2.rhs"]().evaluate(q0, tol, budget)
    return math.sqrt((1 - q0**2) * (1 - q0**8)) * rhs


@dataclass(frozen=True)
class LimitExpression:
    id: str
    description: str
    value: Callable[[float, float, int], float]
    target: float


LIMIT_EXPRESSIONS: dict[str, LimitExpression] = {
    e.id: e
    for e in (
        LimitExpression("pi", "(1-q) (q^2;q^2)_inf^2 / (q;q^2)_inf^2",
                        _product(binom(q(1)) * qpoch(q(2), INF, 2) ** 2 / qpoch(q(1), INF, 2) ** 2), math.pi / 2),
        LimitExpression("pi2", "(1-q^2) (q^2;q^2)(q^8;q^8) / ((q;q^2)(q^4;q^8))",
                        _product(binom(q(2)) * PRODUCT_EXPRESSIONS["pi2.rhs"]()), math.pi / 2),
        LimitExpression("pi2-gamma", "sqrt((1-q^2)(1-q^8)) (q^2;q^2)(q^8;q^8) / ((q;q^2)(q^4;q^8))",
                        _pi2_gamma_value, math.pi),
        LimitExpression("pi2-lhs", "(1-q^2) sum (-1)^k q^(k(k+3)/2) / (1-q^(2k+1))",
                        _pi2_lhs_value, math.pi / 2),
        LimitExpression("qid", "(1-q)^2 (q^2;q^2)_inf^4 / (q;q^2)_inf^4",
                        _product(PRODUCT_EXPRESSIONS["qid.rhs"]()), math.pi**2 / 4),
        LimitExpression("q2", "(1-q)^2 / 2 sum q^(2n) / (1-q^(2n+1))^2",
                        _q2_value, math.pi**2 / 16),
    )
}


@dataclass
class LimitExperiment:
    expr: str
    eps: list
    target: float
    values: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    extrapolated: float | None = None

    @property
    def monotone(self) -> bool:
        return all(b < a for a, b in zip(self.errors, self.errors[1:]))

    @property
    def final_error(self) -> float:
        return self.errors[-1]

    def converged(self, threshold: float = 1e-2) -> bool:
        return self.monotone and self.final_error < threshold

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["eps", "value", "abs_error"])
        for e, v, err in zip(self.eps, self.values, self.errors):
            w.writerow([repr(e), repr(v), repr(err)])
        return buf.getvalue()


def q_limit(expr: str, eps_schedule=(0.1, 0.03, 0.01, 0.003, 0.001), target: float | None = None,
            tol: float = 1e-15, budget: int = 10**7, extrapolate: bool = False) -> LimitExperiment:
    """Evaluate a registered expression at ``q = 1 - eps`` along a decreasing schedule.

    With ``extrapolate`` the last two points are combined assuming an error
    linear in ``eps``; the result is informational only.
    """
    try:
        e = LIMIT_EXPRESSIONS[expr]
    except KeyError:
        raise KeyError(f"unknown limit expression {expr!r}") from None
    eps = [float(x) for x in eps_schedule]
    if not eps or any(not 0 < x < 1 for x in eps):
        raise ValueError("eps values must lie in (0, 1)")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("eps schedule must be strictly decreasing")
    target = e.target if target is None else target
    out = LimitExperiment(expr, eps, target)
    for x in eps:
        v = e.value(1.0 - x, tol, budget)
        out.values.append(v)
        out.errors.append(abs(v - target))
    if extrapolate and len(eps) >= 2:
        (e1, v1), (e2, v2) = zip(eps[-2:], out.values[-2:])
        out.extrapolated = (e1 * v2 - e2 * v1) / (e1 - e2)
    return out


# -- summand limit -------------------------------------------------------------------


def qid_summand_expr(n: int) -> QProduct:
    """``q^(n(n+1)/2) (1-q^(3n+2))/(1-q) (q;q)_n^3 (-q;q)_n / (q^3;q^2)_n^3``."""
    return (
        QProduct(1, n * (n + 1) // 2) * binom(q(3 * n + 2)) / binom(q(1))
        * qpoch(q(1), n) ** 3 * qpoch(q(1, -1), n) / qpoch(q(3), n, 2) ** 3
    )


def qid_summand_classical(n: int) -> Fraction:
    return Fraction((3 * n + 2) * 16 ** (n + 1), 2 * (n + 1) ** 3 * comb(2 * n + 2, n + 1) ** 3)


@dataclass
class SummandLimit:
    n: int
    target: float
    eps: list
    values: list
    errors: list

    @property
    def monotone(self) -> bool:
        return all(b < a for a, b in zip(self.errors, self.errors[1:]))


def summand_limit_check(n: int, eps_schedule=(0.1, 0.03, 0.01, 0.003)) -> SummandLimit:
    if not 0 <= n <= 10:
        raise ValueError("n must lie in 0..10")
    target = float(qid_summand_classical(n))
    expr = qid_summand_expr(n)
    values = [expr.evaluate(1.0 - e) for e in eps_schedule]
    return SummandLimit(n, target, list(eps_schedule), values, [abs(v - target) for v in values])
