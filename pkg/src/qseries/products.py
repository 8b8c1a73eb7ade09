"""q-Pochhammer symbols, Gauss's psi function and the named product sides.

Products are kept symbolic (:class:`QProduct`) until a truncation order is
known.  Each factor ``1 - c*q**e`` is normalised to a unit monomial times a
factor with positive exponent, so expansion is exact and never wastes order:
only the surviving window ``order - valuation`` is ever computed.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Union

from .series import (
    LaurentSeries,
    SeriesError,
    _to_t,
    as_rational,
    div_binomial,
    mul_binomial,
)

INF = math.inf


class PoleError(SeriesError, ZeroDivisionError):
    """A denominator factor vanishes identically."""


class NonTermination(SeriesError):
    pass


class TruncationBudgetExceeded(SeriesError):
    pass


@dataclass(frozen=True)
class QMonomial:
    """The monomial ``coeff * q**exp`` with rational coefficient and exponent."""

    coeff: Fraction = Fraction(1)
    exp: Fraction = Fraction(0)

    def __post_init__(self):
        if isinstance(self.coeff, float) or isinstance(self.exp, float):
            raise TypeError("QMonomial takes exact rationals only")
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "exp", Fraction(self.exp))

    @classmethod
    def coerce(cls, x) -> "QMonomial":
        if isinstance(x, QMonomial):
            return x
        return cls(Fraction(x), Fraction(0))

    @classmethod
    def from_pair(cls, pair) -> "QMonomial":
        c, r = pair
        return cls(Fraction(c), Fraction(r))

    def to_pair(self) -> list[str]:
        return [str(self.coeff), str(self.exp)]

    def is_zero(self) -> bool:
        return self.coeff == 0

    def __mul__(self, other):
        other = QMonomial.coerce(other)
        return QMonomial(self.coeff * other.coeff, self.exp + other.exp)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QMonomial.coerce(other)
        if other.coeff == 0:
            raise ZeroDivisionError("division by the zero monomial")
        return QMonomial(self.coeff / other.coeff, self.exp - other.exp)

    def __rtruediv__(self, other):
        return QMonomial.coerce(other) / self

    def __neg__(self):
        return QMonomial(-self.coeff, self.exp)

    def __pow__(self, k: int):
        return QMonomial(self.coeff ** k, self.exp * k)

    def series(self, order, scale: int | None = None) -> LaurentSeries:
        return LaurentSeries.from_terms({self.exp: self.coeff}, order, scale)

    def __str__(self):
        if self.coeff == 0:
            return "0"
        if self.exp == 0:
            return str(self.coeff)
        c = "" if self.coeff == 1 else "-" if self.coeff == -1 else f"{self.coeff}*"
        e = f"({self.exp})" if self.exp.denominator != 1 else str(self.exp)
        return f"{c}q^{e}"


def q(exp=1, coeff=1) -> QMonomial:
    """Shorthand: ``q(3) == q**3``, ``q(Fraction(1, 2), -1) == -q**(1/2)``."""
    return QMonomial(Fraction(coeff), Fraction(exp))


Monomial = Union[QMonomial, int, Fraction]


class QProduct:
    """``coeff * q**shift * prod(1 - c q**e)**p * prod((c q**e0; q**step)_inf)**p``.

    Infinite progressions are canonicalised so that ``0 < e0 <= step``; the
    factors peeled off during canonicalisation become finite binomials.
    Identically vanishing factors ``1 - q**0`` are counted separately and never
    cancel against each other.
    """

    __slots__ = ("coeff", "shift", "finite", "infinite", "zeros_num", "zeros_den")

    def __init__(self, coeff=1, shift=0):
        self.coeff = Fraction(coeff)
        self.shift = Fraction(shift)
        self.finite: Counter = Counter()
        self.infinite: Counter = Counter()
        self.zeros_num = 0
        self.zeros_den = 0

    def copy(self) -> "QProduct":
        p = QProduct(self.coeff, self.shift)
        p.finite = Counter(self.finite)
        p.infinite = Counter(self.infinite)
        p.zeros_num, p.zeros_den = self.zeros_num, self.zeros_den
        return p

    # building ---------------------------------------------------------------

    def _add_binomial(self, c: Fraction, e: Fraction, power: int) -> None:
        if c == 0 or power == 0:
            return
        if c == 1 and e == 0:
            if power > 0:
                self.zeros_num += power
            else:
                self.zeros_den -= power
            return
        key = (c, e)
        self.finite[key] += power
        if self.finite[key] == 0:
            del self.finite[key]

    def _add_progression(self, c: Fraction, e: Fraction, step: Fraction, power: int) -> None:
        if c == 0 or power == 0:
            return
        if step <= 0:
            raise NonTermination(f"infinite product needs a positive base, got q^{step}")
        j = math.ceil(e / step) - 1
        e0 = e - j * step
        if j > 0:
            for i in range(j):
                self._add_binomial(c, e0 + i * step, -power)
        elif j < 0:
            for i in range(-j):
                self._add_binomial(c, e + i * step, power)
        key = (c, e0, step)
        self.infinite[key] += power
        if self.infinite[key] == 0:
            del self.infinite[key]

    @classmethod
    def binomial(cls, a: Monomial, power: int = 1) -> "QProduct":
        """The factor ``(1 - a)**power``."""
        a = QMonomial.coerce(a)
        p = cls()
        p._add_binomial(a.coeff, a.exp, power)
        return p

    @classmethod
    def monomial(cls, a: Monomial) -> "QProduct":
        a = QMonomial.coerce(a)
        return cls(a.coeff, a.exp)

    @classmethod
    def poch(cls, a: Monomial, n=INF, base=1) -> "QProduct":
        """``(a; q**base)_n`` for integer ``n >= 0``, ``n = INF``, or rational ``n`` (real index)."""
        a = QMonomial.coerce(a)
        base = Fraction(base)
        p = cls()
        if n == INF:
            p._add_progression(a.coeff, a.exp, base, 1)
        elif isinstance(n, int):
            if n < 0:
                raise ValueError("finite Pochhammer index must be nonnegative; use a Fraction for real index")
            for i in range(n):
                p._add_binomial(a.coeff, a.exp + i * base, 1)
        else:
            r = Fraction(n)
            if base <= 0:
                raise NonTermination("real-index Pochhammer needs a positive base")
            p._add_progression(a.coeff, a.exp, base, 1)
            p._add_progression(a.coeff, a.exp + base * r, base, -1)
        return p

    # algebra ------------------------------------------------------------------

    def __mul__(self, other) -> "QProduct":
        if not isinstance(other, QProduct):
            if isinstance(other, QMonomial):
                other = QProduct.monomial(other)
            else:
                r = self.copy()
                r.coeff *= Fraction(other)
                return r
        r = self.copy()
        r.coeff *= other.coeff
        r.shift += other.shift
        for (c, e), p in other.finite.items():
            r._add_binomial(c, e, p)
        for key, p in other.infinite.items():
            r.infinite[key] += p
            if r.infinite[key] == 0:
                del r.infinite[key]
        r.zeros_num += other.zeros_num
        r.zeros_den += other.zeros_den
        return r

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QProduct":
        if k < 0:
            return QProduct() / (self ** (-k))
        r = QProduct()
        for _ in range(k):
            r = r * self
        return r

    def __truediv__(self, other) -> "QProduct":
        if not isinstance(other, QProduct):
            if isinstance(other, QMonomial):
                other = QProduct.monomial(other)
            else:
                return self * (Fraction(1) / Fraction(other))
        if other.coeff == 0:
            raise PoleError("division by a product with zero coefficient")
        inv = QProduct(1 / other.coeff, -other.shift)
        inv.finite = Counter({k: -p for k, p in other.finite.items()})
        inv.infinite = Counter({k: -p for k, p in other.infinite.items()})
        inv.zeros_num, inv.zeros_den = other.zeros_den, other.zeros_num
        return self * inv

    def __rtruediv__(self, other) -> "QProduct":
        return QProduct(other) / self

    # inspection ---------------------------------------------------------------

    def is_zero(self) -> bool:
        """True if the product vanishes identically (raises on a 0/0 or pole)."""
        if self.zeros_den:
            raise PoleError("denominator contains the vanishing factor (1 - q^0)")
        return self.zeros_num > 0 or self.coeff == 0

    def exponents(self) -> Iterable[Fraction]:
        yield self.shift
        for c, e in self.finite:
            yield e
        for c, e0, step in self.infinite:
            yield e0
            yield step

    def scale(self) -> int:
        s = 1
        for e in self.exponents():
            s = math.lcm(s, e.denominator)
        return s

    def _normal_form(self):
        """Coefficient, q-shift and the list of ``(c, e, power)`` with ``e > 0``."""
        if self.zeros_den:
            raise PoleError("denominator contains the vanishing factor (1 - q^0)")
        coeff = self.coeff
        shift = self.shift
        factors = []
        for (c, e), p in self.finite.items():
            if e > 0:
                factors.append((c, e, p))
            elif e < 0:
                coeff *= (-c) ** p
                shift += e * p
                factors.append((1 / c, -e, p))
            else:
                if p < 0 and c == 1:
                    raise PoleError("vanishing constant factor in denominator")
                coeff *= (1 - c) ** p
        return coeff, shift, factors

    def valuation(self) -> Fraction | None:
        """Exact q-valuation, or None when the product is identically zero."""
        if self.is_zero():
            return None
        _, shift, _ = self._normal_form()
        return shift

    # expansion ----------------------------------------------------------------

    def series(self, order, scale: int | None = None) -> LaurentSeries:
        """Exact expansion to ``O(q**order)``."""
        s = math.lcm(self.scale(), Fraction(order).denominator, scale or 1)
        t_order = _to_t(order, s)
        if self.is_zero():
            return LaurentSeries((), 0, t_order, s)
        coeff, shift, factors = self._normal_form()
        m = _to_t(shift, s)
        length = t_order - m
        if length <= 0:
            return LaurentSeries((), 0, t_order, s)
        dense = _expand_progressions(self.infinite, s, length)
        for c, e, p in factors:
            et = _to_t(e, s)
            c = as_rational(c)
            if p > 0:
                for _ in range(p):
                    dense = mul_binomial(dense, c, et)
            else:
                for _ in range(-p):
                    dense = div_binomial(dense, c, et)
        coeff = as_rational(coeff)
        if coeff != 1:
            dense = [coeff * x for x in dense]
        return LaurentSeries(dense, m, t_order, s)

    def evaluate(self, q0: float, tol: float = 1e-15, max_factors: int = 10**7) -> float:
        """Floating-point value at ``0 < q0 < 1``; infinite products stop once ``|c| q0**e < tol``."""
        if not 0 < q0 < 1:
            raise ValueError("q0 must lie in (0, 1)")
        if self.is_zero():
            return 0.0
        logq = math.log(q0)
        sign = 1.0 if self.coeff > 0 else -1.0
        log_abs = math.log(abs(self.coeff)) + float(self.shift) * logq

        def take(c, e, p):
            nonlocal sign, log_abs
            f = 1.0 - float(c) * math.exp(float(e) * logq)
            if f == 0.0:
                raise PoleError("factor vanishes at the evaluation point")
            if f < 0 and p % 2:
                sign = -sign
            log_abs += p * math.log(abs(f))

        for (c, e), p in self.finite.items():
            take(c, e, p)
        for (c, e0, step), p in self.infinite.items():
            c_abs = abs(float(c))
            # smallest j with |c| q0^(e0 + j*step) < tol
            depth = max(0, math.ceil((math.log(tol / c_abs) / logq - float(e0)) / float(step))) + 1
            if depth > max_factors:
                raise TruncationBudgetExceeded(f"infinite product needs {depth} factors at q={q0}")
            for j in range(depth):
                take(c, e0 + j * step, p)
        return sign * math.exp(log_abs)

    def __repr__(self):
        parts = [f"{self.coeff}*q^{self.shift}"]
        for (c, e), p in sorted(self.finite.items()):
            parts.append(f"(1-({c})q^{e})^{p}")
        for (c, e0, step), p in sorted(self.infinite.items()):
            parts.append(f"(({c})q^{e0};q^{step})_inf^{p}")
        if self.zeros_num or self.zeros_den:
            parts.append(f"0^{self.zeros_num - self.zeros_den}")
        return "QProduct(" + " ".join(parts) + ")"


_PROGRESSION_CACHE: dict = {}


def _expand_progressions(infinite: Counter, scale: int, length: int) -> list:
    """Dense coefficients of a product of canonical infinite progressions."""
    if not infinite:
        return [1] + [0] * (length - 1)
    key = (scale, frozenset(infinite.items()))
    hit = _PROGRESSION_CACHE.get(key)
    if hit is not None and len(hit) >= length:
        return list(hit[:length])
    dense = [1] + [0] * (length - 1)
    for (c, e0, step), p in sorted(infinite.items()):
        c = as_rational(c)
        et, st = _to_t(e0, scale), _to_t(step, scale)
        for e in range(et, length, st):
            if p > 0:
                for _ in range(p):
                    dense = mul_binomial(dense, c, e)
            else:
                for _ in range(-p):
                    dense = div_binomial(dense, c, e)
    if len(_PROGRESSION_CACHE) > 512:
        _PROGRESSION_CACHE.clear()
    _PROGRESSION_CACHE[key] = tuple(dense)
    return dense


def qpoch(a: Monomial, n=INF, base=1) -> QProduct:
    return QProduct.poch(a, n, base)


def binom(a: Monomial, power: int = 1) -> QProduct:
    """``(1 - a)**power`` as a product."""
    return QProduct.binomial(a, power)


def poch_product(params: Iterable[Monomial], n=INF, base=1) -> QProduct:
    """``(a1, a2, ...; q**base)_n``."""
    r = QProduct()
    for a in params:
        r = r * qpoch(a, n, base)
    return r


@dataclass(frozen=True)
class PochSpec:
    """``(a; q**base)_index`` where index is an int, ``INF``, or a Fraction (real index)."""

    a: QMonomial
    base: Fraction = Fraction(1)
    index: object = INF

    @property
    def kind(self) -> str:
        if self.index == INF:
            return "infinite"
        if isinstance(self.index, int):
            return "finite"
        return "real"

    def product(self) -> QProduct:
        return qpoch(self.a, self.index, self.base)


def poch(spec: PochSpec, order) -> LaurentSeries:
    return spec.product().series(order)


# -- Gauss's psi ----------------------------------------------------------------


def triangular(x: int) -> int:
    return x * (x + 1) // 2


def psi_sum(order, scale: int = 1) -> LaurentSeries:
    """``sum_n q**(n(n+1)/2)`` to ``O(q**order)``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    terms = {}
    n = 0
    while triangular(n) < order:
        terms[triangular(n)] = 1
        n += 1
    return LaurentSeries.from_terms(terms, order, scale)


def psi_product_expr() -> QProduct:
    return qpoch(q(2), INF, 2) / qpoch(q(1), INF, 2)


def psi_product(order) -> LaurentSeries:
    """``(q^2;q^2)_inf / (q;q^2)_inf``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    return psi_product_expr().series(order)


# -- named product sides ----------------------------------------------------------


def _pi1_rhs() -> QProduct:
    return qpoch(q(4), INF, 4) ** 2 / qpoch(q(2), INF, 4) ** 2


def _pi2_rhs() -> QProduct:
    return (qpoch(q(2), INF, 2) * qpoch(q(8), INF, 8)) / (qpoch(q(1), INF, 2) * qpoch(q(4), INF, 8))


def _gl1_rhs() -> QProduct:
    return binom(q(1, -1)) * qpoch(q(2), INF, 4) * qpoch(q(6), INF, 4) / qpoch(q(4), INF, 4) ** 2


def _gl2_rhs() -> QProduct:
    return qpoch(q(3), INF, 4) * qpoch(q(5), INF, 4) / qpoch(q(4), INF, 4) ** 2


def _qid_rhs() -> QProduct:
    return binom(q(1), 2) * qpoch(q(2), INF, 2) ** 4 / qpoch(q(1), INF, 2) ** 4


PRODUCT_EXPRESSIONS: dict[str, Callable[[], QProduct]] = {
    "pi1.rhs": _pi1_rhs,
    "pi2.rhs": _pi2_rhs,
    "gl1.rhs": _gl1_rhs,
    "gl2.rhs": _gl2_rhs,
    "qid.rhs": _qid_rhs,
    "psi": psi_product_expr,
}


def q2_rhs(order) -> LaurentSeries:
    """``1/2 * sum_n q**(2n) / (1 - q**(2n+1))**2`` built term by term from binomial factors."""
    total = LaurentSeries.zero(order)
    n = 0
    while 2 * n < order:
        term = QProduct(Fraction(1, 2), 2 * n) / binom(q(2 * n + 1), 2)
        total = total + term.series(order)
        n += 1
    return total


def product_side(name: str, order) -> LaurentSeries:
    """Exact series of one of the registered product sides."""
    if name == "q2.rhs":
        return q2_rhs(order)
    try:
        expr = PRODUCT_EXPRESSIONS[name]
    except KeyError:
        raise KeyError(f"unknown product side {name!r}") from None
    return expr().series(order)


PRODUCT_SIDE_NAMES = tuple(sorted(list(PRODUCT_EXPRESSIONS) + ["q2.rhs"]))
