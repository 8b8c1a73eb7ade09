"""Basic hypergeometric series and the specific q-sums used in the identities.

Every sum here is a *term-ratio* sum: ``term(l+1) = term(l) * ratio(l)`` where
``ratio(l)`` is a monomial times finitely many binomials ``1 - c q**e`` whose
exponents are affine in ``l``.  :func:`term_sum` walks the terms exactly,
tracking the valuation of each one, and stops once every remaining term is
provably beyond the truncation order (or a numerator factor vanishes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

from .products import (
    INF,
    NonTermination,
    PoleError,
    QMonomial,
    QProduct,
    _expand_progressions,
    binom,
    poch_product,
    product_side,
    q,
    qpoch,
)
from .series import (
    Comparison,
    InsufficientOrder,
    LaurentSeries,
    SeriesError,
    _to_t,
    as_rational,
    compare,
    div_binomial,
    mul_binomial,
)

Extra = Union[QProduct, Mapping, None]


class DivergentSpec(NonTermination):
    pass


class BudgetExceeded(SeriesError):
    pass


def _binomial_exps(r: QProduct) -> list[Fraction]:
    return [e for (c, e) in r.finite]


def _apply_factors(dense: list, factors) -> list:
    for c, e, p in factors:
        c = as_rational(c)
        if p > 0:
            for _ in range(p):
                dense = mul_binomial(dense, c, e)
        else:
            for _ in range(-p):
                dense = div_binomial(dense, c, e)
    return dense


def _t_factors(factors, s: int):
    return [(c, _to_t(e, s), p) for c, e, p in factors]


def term_sum(
    first: QProduct,
    ratio: Callable[[int], QProduct],
    order,
    extra: Callable[[int], Extra] | None = None,
    scale: int | None = None,
    max_terms: int = 200_000,
) -> LaurentSeries:
    """Exact ``sum_l term(l) * extra(l)`` to ``O(q**order)``.

    ``extra(l)`` may be a polynomial ``{q_exponent: coeff}`` with nonnegative
    exponents or a :class:`QProduct` of finitely many factors; it multiplies
    term ``l`` only and does not feed the recurrence.
    """
    s = math.lcm(
        first.scale(), ratio(0).scale(), ratio(1).scale(), Fraction(order).denominator, scale or 1
    )
    t_order = _to_t(order, s)

    # pass 1: exact valuations and the number of terms that can reach the window
    if first.is_zero():
        return LaurentSeries((), 0, t_order, s)
    c0, shift0, factors0 = first._normal_form()
    vals = [_to_t(shift0, s)]
    steps = []
    ell = 0
    while True:
        if ell >= max_terms:
            raise NonTermination(f"no termination within {max_terms} terms")
        r = ratio(ell)
        if r.zeros_den:
            raise PoleError(f"term {ell + 1} has a vanishing denominator factor")
        if r.zeros_num or r.coeff == 0:
            break
        rc, rshift, rfactors = r._normal_form()
        steps.append((rc, _t_factors(rfactors, s)))
        vals.append(vals[-1] + _to_t(rshift, s))
        if vals[-1] >= t_order:
            if _settled(ratio, ell + 1):
                break
        elif ell >= 4 and ell & (ell - 1) == 0:
            _settled(ratio, ell + 1)  # raises on divergent growth
        ell += 1

    minfut = list(vals)
    for i in range(len(vals) - 2, -1, -1):
        minfut[i] = min(vals[i], minfut[i + 1])
    lo = min(minfut[0], t_order)
    if minfut[0] >= t_order:
        return LaurentSeries((), 0, t_order, s)

    total = [0] * (t_order - lo)
    length = t_order - minfut[0]
    dense = _expand_progressions(first.infinite, s, length)
    dense = _apply_factors(dense, _t_factors(factors0, s))
    coeff = Fraction(c0)
    for ell, v in enumerate(vals):
        if v < t_order:
            contrib, cshift = _with_extra(dense[: t_order - v], extra(ell) if extra else None, s)
            base = v + cshift - lo
            cf = as_rational(coeff)
            for i, x in enumerate(contrib[: t_order - v - cshift]):
                if x:
                    total[base + i] += cf * x
        if ell == len(steps):
            break
        rc, rfactors = steps[ell]
        coeff *= rc
        dense = _apply_factors(dense, rfactors)
        dense = dense[: max(t_order - minfut[ell + 1], 0)]
        if not dense:
            break
    return LaurentSeries(total, lo, t_order, s)


def _with_extra(dense: list, extra: Extra, s: int):
    if extra is None:
        return dense, 0
    if isinstance(extra, QProduct):
        if extra.is_zero():
            return [], 0
        c, shift, factors = extra._normal_form()
        m = _to_t(shift, s)
        if m < 0:
            raise ValueError("extra factors must have nonnegative valuation")
        out = _apply_factors(list(dense), _t_factors(factors, s))
        c = as_rational(c)
        return ([c * x for x in out] if c != 1 else out), m
    poly = {_to_t(e, s): as_rational(c) for e, c in extra.items() if c}
    if any(e < 0 for e in poly):
        raise ValueError("extra polynomial must have nonnegative exponents")
    n = len(dense)
    out = [0] * n
    for e, c in poly.items():
        for i in range(n - e):
            x = dense[i]
            if x:
                out[i + e] += c * x
    return out, 0


def _raw_shift(r: QProduct) -> Fraction:
    return r.shift


def _settled(ratio: Callable[[int], QProduct], ell: int) -> bool:
    """True when ``ratio(j)`` has nonnegative valuation, nondecreasing in ``j``, for all ``j >= ell``.

    Relies on the ratio's exponents being affine in the index, so two
    consecutive samples determine the trend.
    """
    r1, r2 = ratio(ell), ratio(ell + 1)
    for r in (r1, r2):
        if r.zeros_num or r.coeff == 0:
            return True
    e1, e2 = _binomial_exps(r1), _binomial_exps(r2)
    if (e1 and min(e1) < 0) or (e2 and min(e2) < 0):
        return False
    if e1 and e2 and min(e2) < min(e1):
        return False
    d1, d2 = _raw_shift(r1), _raw_shift(r2)
    if d2 < d1:
        raise DivergentSpec("term valuations eventually decrease; the sum does not converge q-adically")
    if d1 <= 0 and d2 == d1:
        raise DivergentSpec("term valuations stop growing; the sum does not converge q-adically")
    if d1 < 0:
        return False
    return True


# -- basic hypergeometric series ------------------------------------------------


def _monomial_list(xs) -> list[QMonomial]:
    return [QMonomial.coerce(x) for x in xs]


@dataclass
class PhiSpec:
    """``_r phi_s [upper; lower; q**base, argument]`` truncated at ``O(q**order)``."""

    upper: Sequence[QMonomial]
    lower: Sequence[QMonomial]
    base: Fraction = Fraction(1)
    argument: QMonomial = field(default_factory=lambda: q(1))
    order: int = 20

    def __post_init__(self):
        self.upper = _monomial_list(self.upper)
        self.lower = _monomial_list(self.lower)
        self.base = Fraction(self.base)
        self.argument = QMonomial.coerce(self.argument)
        if self.base <= 0:
            raise DivergentSpec("base must be a positive power of q")

    def ratio(self, ell: int) -> QProduct:
        m = self.base
        k = len(self.lower) - len(self.upper) + 1
        r = QProduct((-1) ** k, m * ell * k) * self.argument
        for a in self.upper:
            r = r * binom(a * q(m * ell))
        r = r / binom(q(m * (ell + 1)))
        for b in self.lower:
            r = r / binom(b * q(m * ell))
        return r

    def to_dict(self) -> dict:
        return {
            "upper": [a.to_pair() for a in self.upper],
            "lower": [b.to_pair() for b in self.lower],
            "base": str(self.base),
            "argument": self.argument.to_pair(),
            "order": self.order,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "PhiSpec":
        return cls(
            upper=[QMonomial.from_pair(p) for p in d["upper"]],
            lower=[QMonomial.from_pair(p) for p in d["lower"]],
            base=Fraction(d.get("base", 1)),
            argument=QMonomial.from_pair(d["argument"]),
            order=d["order"],
        )


def phi(spec: PhiSpec) -> LaurentSeries:
    """Expand a basic hypergeometric series exactly to its order."""
    return term_sum(QProduct(), spec.ratio, spec.order)


def phi_terms_count(spec: PhiSpec) -> int:
    """Number of nonzero terms of a terminating series (``None`` if it does not terminate early)."""
    n = 1
    for ell in range(100_000):
        r = spec.ratio(ell)
        if r.zeros_num or r.coeff == 0:
            return n
        n += 1
    return None


# -- the summation instance and the reduced transformation ------------------------


def sum_2phi2_lhs(a: QMonomial, b: QMonomial, order, base=1) -> LaurentSeries:
    """``_2phi_2[a, p/a; -p, b; p, -b]`` with ``p = q**base``."""
    a, b = QMonomial.coerce(a), QMonomial.coerce(b)
    p = q(base)
    return phi(PhiSpec([a, p / a], [-p, b], base, -b, order))


def sum_2phi2_rhs(a: QMonomial, b: QMonomial, order, base=1) -> LaurentSeries:
    """``(ab, bp/a; p^2)_inf / (b; p)_inf`` with ``p = q**base``."""
    a, b = QMonomial.coerce(a), QMonomial.coerce(b)
    base = Fraction(base)
    expr = qpoch(a * b, INF, 2 * base) * qpoch(b * q(base) / a, INF, 2 * base) / qpoch(b, INF, base)
    return expr.series(order)


def reduced_3phi3_lhs(order) -> LaurentSeries:
    """``_3phi_3[q, q^(1/2), -q^(1/2); -q^(3/2), q^(3/2), 0; q, q^2] * (q^3;q^2)_inf^2``."""
    h = Fraction(1, 2)
    series = phi(PhiSpec([q(1), q(h), q(h, -1)], [q(3 * h, -1), q(3 * h), 0], 1, q(2), order))
    return series * (qpoch(q(3), INF, 2) ** 2).series(order)


def reduced_3phi3_rhs(order) -> LaurentSeries:
    """``(q^2;q^2)_inf (q^4;q^2)_inf * _2phi_2[q, q; -q^2, -q^3; q^2, q^3]``."""
    pre = (qpoch(q(2), INF, 2) * qpoch(q(4), INF, 2)).series(order)
    return pre * phi(PhiSpec([q(1), q(1)], [q(2, -1), q(3, -1)], 2, q(3), order))


# -- sums of the main identities ---------------------------------------------------


def pi1_lhs(order) -> LaurentSeries:
    """``sum_k (-q)^k / (1 - q^(2k+1))`` summed term by term with exact inverses."""
    total = LaurentSeries.zero(order)
    k = 0
    while k < order:
        denom = LaurentSeries.from_terms({0: 1, 2 * k + 1: -1}, order - k)
        total = total + denom.inverse().truncate(order - k).shift(k).scalar((-1) ** k)
        k += 1
    return total


def pi2_lhs(order) -> LaurentSeries:
    """``sum_k (-1)^k q^(k(k+3)/2) / (1 - q^(2k+1))`` summed term by term with exact inverses."""
    total = LaurentSeries.zero(order)
    k = 0
    while k * (k + 3) // 2 < order:
        v = k * (k + 3) // 2
        denom = LaurentSeries.from_terms({0: 1, 2 * k + 1: -1}, order - v)
        total = total + denom.inverse().truncate(order - v).shift(v).scalar((-1) ** k)
        k += 1
    return total


def pi2_lhs_hypergeometric(order) -> LaurentSeries:
    """``(1-q) * pi2.lhs`` as the ``_3phi_3`` of the reduced transformation (scale 2)."""
    h = Fraction(1, 2)
    return phi(PhiSpec([q(1), q(h), q(h, -1)], [q(3 * h, -1), q(3 * h), 0], 1, q(2), order))


def pi2_rhs_hypergeometric(order) -> LaurentSeries:
    """``(1-q) * pi2.rhs`` via the reduced transformation and the ``_2phi_2`` summation."""
    expr = (
        qpoch(q(2), INF, 2) * qpoch(q(4), INF, 2) * qpoch(q(4, -1), INF, 4) ** 2
        / (qpoch(q(3, -1), INF, 2) * qpoch(q(3), INF, 2) ** 2)
    )
    return expr.series(order)


def qid_lhs(order) -> LaurentSeries:
    """``sum_n q^(n(n+1)/2) (1-q^(3n+2))/(1-q) (q;q)_n^3 (-q;q)_n / (q^3;q^2)_n^3``."""

    def ratio(n):
        return QProduct(1, n + 1) * binom(q(n + 1), 3) * binom(q(n + 1, -1)) / binom(q(2 * n + 3), 3)

    return term_sum(binom(q(1), -1), ratio, order, extra=lambda n: binom(q(3 * n + 2)))


def q2_lhs(order) -> LaurentSeries:
    """``sum_n q^(2n(n+1)) (1 + q^(2n+2) - 2q^(4n+3)) (q^2;q^2)_n^3 / ((q;q^2)_(n+1)^3 (-1;q)_(2n+3))``."""
    first = QProduct() / (binom(q(1), 3) * qpoch(-1, 3))

    def ratio(n):
        return (
            QProduct(1, 4 * n + 4) * binom(q(2 * n + 2), 3)
            / (binom(q(2 * n + 3), 3) * binom(q(2 * n + 3, -1)) * binom(q(2 * n + 4, -1)))
        )

    return term_sum(first, ratio, order, extra=lambda n: {0: 1, 2 * n + 2: 1, 4 * n + 3: -2})


def gl1_lhs(order) -> LaurentSeries:
    """``sum_n q^(n^2) (1-q^(6n+1))/(1-q) (q;q^2)_n^2 (q^2;q^4)_n / (q^4;q^4)_n^3``."""

    def ratio(n):
        return QProduct(1, 2 * n + 1) * binom(q(2 * n + 1), 2) * binom(q(4 * n + 2)) / binom(q(4 * n + 4), 3)

    return term_sum(binom(q(1), -1), ratio, order, extra=lambda n: binom(q(6 * n + 1)))


def gl2_lhs(order) -> LaurentSeries:
    """``sum_n (-1)^n q^(3n^2) (1-q^(6n+1))/(1-q) (q;q^2)_n^3 / (q^4;q^4)_n^3``."""

    def ratio(n):
        return QProduct(-1, 6 * n + 3) * binom(q(2 * n + 1), 3) / binom(q(4 * n + 4), 3)

    return term_sum(binom(q(1), -1), ratio, order, extra=lambda n: binom(q(6 * n + 1)))


# -- the CK2 / CK3 chain ------------------------------------------------------------


def ck2_lhs(d: QMonomial, order) -> LaurentSeries:
    """Left side of the ``a = q^2, b = c = q`` quadratic transformation."""
    d = QMonomial.coerce(d)
    e = q(3) / d

    def ratio(n):
        num = binom(q(2 * n + 2)) * binom(d * q(2 * n)) * binom(e * q(2 * n)) * binom(q(n + 1), 3)
        den = binom(q(n + 1)) * binom(e * q(n)) * binom(d * q(n)) * binom(q(2 * n + 3), 3)
        return QProduct(1, 1) * num / den

    return term_sum(binom(q(2), -1), ratio, order, extra=lambda n: binom(q(3 * n + 2)))


def ck3_phi(d: QMonomial, order) -> LaurentSeries:
    """``_3phi_2[q, q, q; dq, q^4/d; q^2, q^2]``."""
    d = QMonomial.coerce(d)
    return phi(PhiSpec([q(1)] * 3, [d * q(1), q(4) / d], 2, q(2), order))


def ck2_prefactor() -> QProduct:
    return poch_product([q(4), q(2), q(2), q(2)], INF, 2) / poch_product([q(1), q(3), q(3), q(3)], INF, 2)


def ck2_rhs(d: QMonomial, order) -> LaurentSeries:
    return ck2_prefactor().series(order) * ck3_phi(d, order)


def ck3_stabilization(M: int, order, sign: int = -1) -> LaurentSeries:
    """The ``_3phi_2`` of CK2 along ``d = sign * q**M``.

    The default ``sign = -1`` follows ``d -> 0`` through negative values; with
    ``sign = +1`` every even ``M >= 4`` hits the pole ``(1; q^2)_l``.
    """
    if M < 1:
        raise ValueError("M must be positive")
    return ck3_phi(q(M, sign), order)


@dataclass
class Stabilization:
    """Result of a stabilization scan along a parameter path."""

    index: int
    series: LaurentSeries
    matches_target: bool | None = None
    mismatch: Comparison | None = None


def stabilize(build: Callable[[int], LaurentSeries], order, start: int = 1, budget: int = 200,
              target: LaurentSeries | None = None, patience: int = 3) -> Stabilization:
    """Smallest path index ``M >= start`` from which the window ``[0, order)`` stays constant.

    ``M`` qualifies once the values at ``M, M+1, ..., M+patience`` agree on the
    window (and agree with ``target`` when one is given).  A single repeated
    value is not enough: paths with a symmetry can repeat early by accident.
    """
    window = []
    for m in range(start, start + budget + patience + 1):
        window.append(build(m).truncate(order))
        if len(window) > patience + 1:
            window.pop(0)
        if len(window) == patience + 1 and all(compare(window[0], w, order) for w in window[1:]):
            hit = m - patience
            if target is None:
                return Stabilization(hit, window[0])
            if compare(window[0], target, order):
                return Stabilization(hit, window[0], True)
    raise BudgetExceeded(f"window [0, {order}) did not stabilize within {budget} steps")


# -- the quadratic summation reduced at a = b = q ------------------------------------


def red_lhs(N: int, d: QMonomial, order) -> LaurentSeries:
    """Left side of the reduced quadratic summation; terminates through ``(q^(-4N); q^4)_k``."""
    d = QMonomial.coerce(d)
    if N < 1:
        raise ValueError("N must be positive")
    u = q(4 * N + 4) / d
    w = q(3) / d
    x = d * q(-4 * N - 1)

    def ratio(k):
        num = (binom(d * q(4 * k)) * binom(u * q(4 * k)) * binom(q(4 * k - 4 * N))
               * binom(q(2 * k + 1), 3))
        den = (binom(q(4 * k + 4), 3) * binom(w * q(2 * k)) * binom(x * q(2 * k))
               * binom(q(4 * N + 3 + 2 * k)))
        return QProduct(1, 2) * num / den

    return term_sum(binom(q(1), -1), ratio, order, extra=lambda k: binom(q(6 * k + 1)))


def red_lhs_terms(N: int, d: QMonomial) -> int:
    """Number of nonzero terms in the left side (``N + 1`` unless ``d`` cuts it short)."""
    d = QMonomial.coerce(d)
    count = 1
    for k in range(4 * N + 8):
        zero = (binom(d * q(4 * k)) * binom(q(4 * N + 4) / d * q(4 * k)) * binom(q(4 * k - 4 * N))).zeros_num
        if zero:
            return count
        count += 1
    return count


def red_rhs_expr(N: int, d: QMonomial) -> QProduct:
    d = QMonomial.coerce(d)
    two = poch_product([q(3), q(4 * N + 3) / d], INF, 2) / poch_product([q(3) / d, q(4 * N + 3)], INF, 2)
    four = (poch_product([q(4) / d, q(4) / d, q(4 * N + 4), q(4 * N + 4)], INF, 4)
            / poch_product([q(4), q(4), q(4 * N + 4) / d, q(4 * N + 4) / d], INF, 4))
    return two * four


def red_rhs(N: int, d: QMonomial, order) -> LaurentSeries:
    return red_rhs_expr(N, d).series(order)


def red_rhs_terminating(N: int, order) -> LaurentSeries:
    """``(q^3;q^2)_N (q^(2N+4);q^4)_N^2 / ((q^4;q^4)_N^2 (q^(4N+3);q^2)_N)`` -- the ``d = q^(-2N)`` value."""
    expr = (qpoch(q(3), N, 2) * qpoch(q(2 * N + 4), N, 4) ** 2
            / (qpoch(q(4), N, 4) ** 2 * qpoch(q(4 * N + 3), N, 2)))
    return expr.series(order)


def red_identity(N: int, d: QMonomial, order) -> Comparison:
    """Compare both sides exactly; for ``d = q^(-2N)`` the finite product form is checked too."""
    d = QMonomial.coerce(d)
    lhs = red_lhs(N, d, order)
    rhs = red_rhs(N, d, order)
    cmp = compare(lhs, rhs, order)
    if cmp and d == q(-2 * N):
        cmp = compare(lhs, red_rhs_terminating(N, order), order)
    return cmp


GL_PATHS = {
    1: lambda N: q(2),
    2: lambda N: q(-2 * N),
}


@dataclass
class GLLimit:
    which: int
    order: int
    stable_from: int
    matches_lhs: bool
    matches_rhs: bool

    @property
    def ok(self) -> bool:
        return self.matches_lhs and self.matches_rhs


def gl_limit_check(which: int, order, budget: int | None = None) -> GLLimit:
    """Let ``N`` grow in the reduced summation along the GL1 (``d = q^2``) or GL2 (``d = q^(-2N)``) path.

    Returns the first ``N`` from which both sides' windows ``[0, order)`` stop
    changing, and whether the stable windows equal the corresponding sides
    of the Guo-Liu identity.
    """
    if which not in GL_PATHS:
        raise ValueError("which must be 1 or 2")
    path = GL_PATHS[which]
    budget = budget if budget is not None else max(int(order), 1)
    target_lhs = (gl1_lhs if which == 1 else gl2_lhs)(order)
    target_rhs = product_side(f"gl{which}.rhs", order)
    lhs = stabilize(lambda N: red_lhs(N, path(N), order), order, 1, budget)
    rhs = stabilize(lambda N: red_rhs(N, path(N), order), order, 1, budget)
    return GLLimit(
        which,
        order,
        max(lhs.index, rhs.index),
        bool(compare(lhs.series, target_lhs, order)),
        bool(compare(rhs.series, target_rhs, order)),
    )
