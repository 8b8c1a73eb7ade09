"""Truncated Laurent series in ``t = q**(1/s)`` with exact rational coefficients.

A :class:`LaurentSeries` stores the coefficients of ``t**floor .. t**(order-1)``
densely; everything at or beyond ``t**order`` is unknown.  Coefficients are
Python ints or :class:`fractions.Fraction` instances and never floats.

Orders and floors are kept in *t-units* internally.  Constructors that take
q-exponents (``from_terms``, ``monomial``, ``one``) convert using the scale.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

Rational = Union[int, Fraction]


class SeriesError(ArithmeticError):
    """Base class for errors raised by the series engine."""


class ScaleMismatch(SeriesError):
    pass


class InsufficientOrder(SeriesError):
    pass


class NotInvertible(SeriesError, ZeroDivisionError):
    pass


def as_rational(x) -> Rational:
    """Return ``x`` as an int when integral, otherwise as a Fraction."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        raise TypeError("floating-point coefficients are not allowed")
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _scale_of(values: Iterable) -> int:
    s = 1
    for v in values:
        s = math.lcm(s, Fraction(v).denominator)
    return s


def _to_t(exp, scale: int) -> int:
    e = Fraction(exp) * scale
    if e.denominator != 1:
        raise ScaleMismatch(f"exponent {exp} is not a multiple of 1/{scale}")
    return e.numerator


def _common_scale(a: "LaurentSeries", b: "LaurentSeries") -> int:
    if a.scale == b.scale:
        return a.scale
    if a.scale % b.scale == 0:
        return a.scale
    if b.scale % a.scale == 0:
        return b.scale
    raise ScaleMismatch(f"scales {a.scale} and {b.scale} are incompatible")


# -- dense coefficient kernels ------------------------------------------------


def _normalize_list(coeffs: Iterable) -> list:
    return [as_rational(c) for c in coeffs]


def _common_denominator(xs: Sequence[Rational]) -> int:
    d = 1
    for x in xs:
        if type(x) is not int:
            d = math.lcm(d, x.denominator)
    return d


def _kronecker_mul(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """Integer convolution by packing both operands into one big integer."""
    ma = max((abs(x) for x in a), default=0)
    mb = max((abs(x) for x in b), default=0)
    if ma == 0 or mb == 0:
        return [0] * n
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    width = 8 * nbytes

    def pack(xs):
        pos = b"".join((x if x > 0 else 0).to_bytes(nbytes, "little") for x in xs)
        neg = b"".join((-x if x < 0 else 0).to_bytes(nbytes, "little") for x in xs)
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    count = len(a) + len(b) - 1
    half = 1 << (width - 1)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * count, "little")
    packed = pack(a) * pack(b) + offset
    raw = packed.to_bytes(count * nbytes + 1, "little")
    m = min(n, count)
    out = [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(m)
    ]
    out.extend([0] * (n - m))
    return out


def _sparse_mul(a: Sequence[Rational], b: Sequence[Rational], n: int) -> list:
    out = [0] * n
    nb = min(len(b), n)
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        lim = min(nb, n - i)
        for j in range(lim):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def convolve(a: Sequence[Rational], b: Sequence[Rational], n: int) -> list:
    """First ``n`` coefficients of the product of two coefficient lists."""
    a = list(a[:n])
    b = list(b[:n])
    if not a or not b:
        return [0] * n
    nz_a = sum(1 for x in a if x)
    nz_b = sum(1 for x in b if x)
    if nz_a * nz_b <= 4 * (len(a) + len(b)) or min(len(a), len(b)) < 16:
        return [as_rational(x) for x in _sparse_mul(a, b, n)]
    da = _common_denominator(a)
    db = _common_denominator(b)
    ia = a if da == 1 else [int(x * da) for x in a]
    ib = b if db == 1 else [int(x * db) for x in b]
    prod = _kronecker_mul(ia, ib, n)
    if da * db == 1:
        return prod
    return [as_rational(Fraction(x, da * db)) for x in prod]


def mul_binomial(coeffs: list, c: Rational, e: int) -> list:
    """Multiply a dense list (in place semantics, returns new list) by ``1 - c*t**e``, e > 0."""
    if c == 0 or e >= len(coeffs):
        return list(coeffs)
    head = list(coeffs[:e])
    if c == 1:
        tail = [x - y for x, y in zip(coeffs[e:], coeffs)]
    elif c == -1:
        tail = [x + y for x, y in zip(coeffs[e:], coeffs)]
    else:
        tail = [x - c * y for x, y in zip(coeffs[e:], coeffs)]
    return head + tail


def div_binomial(coeffs: list, c: Rational, e: int) -> list:
    """Divide a dense list by ``1 - c*t**e`` (e > 0) to the same length."""
    n = len(coeffs)
    if c == 0 or e >= n:
        return list(coeffs)
    out = list(coeffs)
    for start in range(e, n, e):
        stop = min(start + e, n)
        prev = out[start - e:stop - e]
        if c == 1:
            out[start:stop] = [x + y for x, y in zip(out[start:stop], prev)]
        elif c == -1:
            out[start:stop] = [x - y for x, y in zip(out[start:stop], prev)]
        else:
            out[start:stop] = [x + c * y for x, y in zip(out[start:stop], prev)]
    return out


def _inverse_list(a: Sequence[Rational], n: int) -> list:
    """Power-series inverse of ``a`` (with a[0] != 0) to ``n`` terms by Newton iteration."""
    a0 = a[0]
    b = [as_rational(Fraction(1) / a0)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        ab = convolve(a, b, k)
        corr = [-x for x in ab]
        corr[0] += 2
        b = convolve(b, corr, k)
    return b[:n]


# -- the series type ----------------------------------------------------------


class Comparison(NamedTuple):
    """Outcome of an exact comparison of two series up to a q-exponent bound."""

    equal: bool
    exponent: Fraction | None = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None

    def __bool__(self):
        return self.equal


class Evaluation(NamedTuple):
    value: float
    tail: float


class LaurentSeries:
    """Immutable truncated Laurent series ``sum c_j t**j + O(t**order)`` with ``q = t**scale``.

    After construction the floor equals the valuation of the first nonzero
    coefficient; a series known to be zero in its window has ``floor == order``
    and no stored coefficients.
    """

    __slots__ = ("scale", "floor", "order", "_c")

    def __init__(self, coeffs: Iterable = (), floor: int = 0, order: int | None = None, scale: int = 1):
        cs = _normalize_list(coeffs)
        if order is None:
            order = floor + len(cs)
        if scale < 1:
            raise ValueError("scale must be a positive integer")
        if len(cs) > order - floor:
            cs = cs[: max(order - floor, 0)]
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        if i == len(cs):
            floor, cs = order, []
        else:
            floor += i
            cs = cs[i:]
            cs.extend([0] * (order - floor - len(cs)))
        self.scale = scale
        self.floor = floor
        self.order = order
        self._c = tuple(cs)

    # constructors -------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Mapping, order, scale: int | None = None) -> "LaurentSeries":
        """Build from ``{q_exponent: coefficient}``; ``order`` is a q-exponent bound."""
        if scale is None:
            scale = _scale_of(list(terms) + [order])
        t_order = _to_t(order, scale)
        exps = {_to_t(e, scale): as_rational(c) for e, c in terms.items()}
        lo = min([e for e in exps if e < t_order] + [t_order])
        cs = [0] * (t_order - lo)
        for e, c in exps.items():
            if e < t_order:
                cs[e - lo] += c
        return cls(cs, lo, t_order, scale)

    @classmethod
    def zero(cls, order=0, scale: int = 1) -> "LaurentSeries":
        return cls((), 0, _to_t(order, scale), scale)

    @classmethod
    def one(cls, order, scale: int = 1) -> "LaurentSeries":
        return cls.from_terms({0: 1}, order, scale)

    @classmethod
    def monomial(cls, coeff, exp, order, scale: int | None = None) -> "LaurentSeries":
        return cls.from_terms({Fraction(exp): coeff}, order, scale)

    @classmethod
    def geometric(cls, order, scale: int = 1) -> "LaurentSeries":
        """``1/(1-q)`` to the given q-order."""
        n = _to_t(order, scale)
        cs = [1 if j % scale == 0 else 0 for j in range(n)]
        return cls(cs, 0, n, scale)

    # accessors ----------------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        """Coefficients of ``t**floor .. t**(order-1)`` as Fractions."""
        return tuple(Fraction(c) for c in self._c)

    @property
    def q_order(self) -> Fraction:
        return Fraction(self.order, self.scale)

    @property
    def valuation(self) -> Fraction:
        return Fraction(self.floor, self.scale)

    def is_zero(self) -> bool:
        return not self._c

    def t_coeff(self, j: int) -> Rational:
        if j >= self.order:
            raise InsufficientOrder(f"t^{j} lies beyond the truncation order t^{self.order}")
        if j < self.floor:
            return 0
        return self._c[j - self.floor]

    def __getitem__(self, exp) -> Fraction:
        """Coefficient of ``q**exp``."""
        e = Fraction(exp) * self.scale
        if e.denominator != 1:
            if Fraction(exp) >= self.q_order:
                raise InsufficientOrder(f"q^{exp} lies beyond the truncation order")
            return Fraction(0)
        return Fraction(self.t_coeff(e.numerator))

    def coefficients(self, n=None, start: int = 0) -> list[Fraction]:
        """Coefficients of ``q**start, q**(start+1), ..., q**(n-1)`` (integer q-exponents)."""
        if n is None:
            n = math.ceil(self.q_order)
        return [self[e] for e in range(start, n)]

    def terms(self) -> dict:
        """Nonzero coefficients keyed by q-exponent."""
        out = {}
        for i, c in enumerate(self._c):
            if c:
                e = Fraction(self.floor + i, self.scale)
                out[e.numerator if e.denominator == 1 else e] = Fraction(c)
        return out

    def __repr__(self) -> str:
        shown = []
        for e, c in list(self.terms().items())[:8]:
            shown.append(f"{c}*q^({e})" if isinstance(e, Fraction) else f"{c}*q^{e}")
        body = " + ".join(shown) or "0"
        return f"LaurentSeries({body} + O(q^{self.q_order}), scale={self.scale})"

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        s = _common_scale(self, other)
        a, b = self.rescale(s), other.rescale(s)
        return (a.floor, a.order, a._c) == (b.floor, b.order, b._c)

    def __hash__(self):
        return hash((self.floor, self.order, self.scale, self._c))

    # structural ----------------------------------------------------------

    def dense(self, lo: int, hi: int) -> list:
        """Coefficients of ``t**lo .. t**(hi-1)`` padded with zeros; ``hi <= order``."""
        if hi > self.order:
            raise InsufficientOrder(f"t^{hi - 1} lies beyond the truncation order t^{self.order}")
        out = [0] * max(hi - lo, 0)
        for j in range(max(lo, self.floor), hi):
            out[j - lo] = self._c[j - self.floor]
        return out

    def rescale(self, scale: int) -> "LaurentSeries":
        if scale == self.scale:
            return self
        if scale % self.scale:
            raise ScaleMismatch(f"cannot rescale from {self.scale} to {scale}")
        m = scale // self.scale
        cs = [0] * (len(self._c) * m)
        cs[::m] = self._c
        return LaurentSeries(cs, self.floor * m, self.order * m, scale)

    def truncate(self, order) -> "LaurentSeries":
        """Drop everything at or beyond ``q**order``."""
        t = _to_t(order, self.scale)
        if t > self.order:
            raise InsufficientOrder(f"requested q^{order} beyond available q^{self.q_order}")
        return LaurentSeries(self._c[: max(t - self.floor, 0)], min(self.floor, t), t, self.scale)

    def shift(self, exp) -> "LaurentSeries":
        """Multiply by ``q**exp`` exactly (order moves along)."""
        s = math.lcm(self.scale, Fraction(exp).denominator)
        a = self.rescale(s)
        e = _to_t(exp, s)
        return LaurentSeries(a._c, a.floor + e, a.order + e, s)

    # ring operations --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            if isinstance(other, float):
                return NotImplemented
            return self + self._constant(other)
        s = _common_scale(self, other)
        a, b = self.rescale(s), other.rescale(s)
        order = min(a.order, b.order)
        lo = min(a.floor, b.floor, order)
        ca = a.dense(lo, max(min(a.order, order), lo)) if a.order >= lo else []
        cb = b.dense(lo, max(min(b.order, order), lo)) if b.order >= lo else []
        n = order - lo
        ca += [0] * (n - len(ca))
        cb += [0] * (n - len(cb))
        return LaurentSeries([x + y for x, y in zip(ca, cb)], lo, order, s)

    __radd__ = __add__

    def _constant(self, c) -> "LaurentSeries":
        # an exact constant, known to the same order as self
        order = max(self.order, 1)
        return LaurentSeries([as_rational(c)], 0, order, self.scale)

    def __neg__(self):
        return LaurentSeries([-x for x in self._c], self.floor, self.order, self.scale)

    def __sub__(self, other):
        if isinstance(other, float):
            return NotImplemented
        return self + (-other if isinstance(other, LaurentSeries) else -as_rational(other))

    def __rsub__(self, other):
        return (-self) + other

    def scalar(self, c) -> "LaurentSeries":
        c = as_rational(c)
        return LaurentSeries([c * x for x in self._c], self.floor, self.order, self.scale)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            if isinstance(other, float):
                return NotImplemented
            return self.scalar(other)
        s = _common_scale(self, other)
        a, b = self.rescale(s), other.rescale(s)
        floor = a.floor + b.floor
        order = min(a.order + b.floor, b.order + a.floor)
        n = order - floor
        if n <= 0 or a.is_zero() or b.is_zero():
            return LaurentSeries((), floor if n > 0 else order, order, s)
        return LaurentSeries(convolve(a._c, b._c, n), floor, order, s)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        """Multiplicative inverse; the result satisfies ``a * a.inverse() == 1 + O(t**order)``."""
        if self.is_zero():
            raise NotInvertible("series is zero throughout its window")
        m = self.floor
        n = self.order - m
        cs = _inverse_list(self._c, n)
        return LaurentSeries(cs, -m, -m + n, self.scale)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        if isinstance(other, float):
            return NotImplemented
        c = as_rational(other)
        if c == 0:
            raise NotInvertible("division by zero constant")
        return self.scalar(Fraction(1) / c)

    def __rtruediv__(self, other):
        return self.inverse().scalar(other)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return LaurentSeries([1], 0, max(self.order - self.floor, 1), self.scale)
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def substitute_power(self, m) -> "LaurentSeries":
        """Replace q by ``q**m`` for a positive rational ``m``."""
        m = Fraction(m)
        if m <= 0:
            raise ScaleMismatch("substitution exponent must be positive")
        p, r = m.numerator, m.denominator
        new_scale = self.scale * r
        cs = [0] * (len(self._c) * p)
        cs[::p] = self._c
        out = LaurentSeries(cs, self.floor * p, self.order * p, new_scale)
        return out.reduce_scale()

    def reduce_scale(self) -> "LaurentSeries":
        """Return the same series at the smallest scale that represents it."""
        g = self.scale
        for j in (self.floor, self.order):
            g = math.gcd(g, j)
        for i, c in enumerate(self._c):
            if g == 1:
                break
            if c:
                g = math.gcd(g, self.floor + i)
        if g <= 1:
            return self
        return LaurentSeries(self._c[::g], self.floor // g, self.order // g, self.scale // g)

    # numerics -------------------------------------------------------------

    def evaluate(self, q0: float) -> Evaluation:
        """Horner evaluation of the truncated series at ``q = q0``, with the size of the last retained term."""
        if not 0 < q0 < 1:
            raise ValueError("q0 must lie in (0, 1)")
        if self.is_zero():
            return Evaluation(0.0, 0.0)
        t = q0 ** (1.0 / self.scale)
        acc = 0.0
        for c in reversed(self._c):
            acc = acc * t + float(c)
        last = len(self._c) - 1
        while last > 0 and self._c[last] == 0:
            last -= 1
        tail = abs(float(self._c[last])) * t ** (self.floor + last)
        return Evaluation(acc * t ** self.floor, tail)

    # serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "scale": self.scale,
            "floor": self.floor,
            "order": self.order,
            "coeffs": [[Fraction(c).numerator, Fraction(c).denominator] for c in self._c],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: Mapping) -> "LaurentSeries":
        cs = [Fraction(n, den) for n, den in d["coeffs"]]
        return cls(cs, d["floor"], d["order"], d["scale"])

    @classmethod
    def from_json(cls, s: str) -> "LaurentSeries":
        return cls.from_dict(json.loads(s))


def compare(a: LaurentSeries, b: LaurentSeries, n=None) -> Comparison:
    """Compare two series coefficientwise below ``q**n`` (default: the smaller order).

    Raises :class:`InsufficientOrder` if either series is not known up to ``n``.
    """
    s = _common_scale(a, b)
    a, b = a.rescale(s), b.rescale(s)
    if n is None:
        hi = min(a.order, b.order)
    else:
        hi = _to_t(n, s) if (Fraction(n) * s).denominator == 1 else math.ceil(Fraction(n) * s)
        if hi > min(a.order, b.order):
            raise InsufficientOrder(
                f"comparison to q^{n} needs order {hi}/{s}, have {a.order}/{s} and {b.order}/{s}"
            )
    lo = min(a.floor, b.floor, hi)
    for j in range(lo, hi):
        x, y = a.t_coeff(j), b.t_coeff(j)
        if x != y:
            e = Fraction(j, s)
            return Comparison(False, e, Fraction(x), Fraction(y))
    return Comparison(True)


def series_sum(items: Iterable[LaurentSeries], order, scale: int = 1) -> LaurentSeries:
    """Sum of series, each known at least to ``q**order``; the result is truncated there."""
    total = LaurentSeries.zero(order, scale)
    for x in items:
        total = total + x
    return total
