"""
Truncated q-series
==================

Exact Laurent series in q with rational coefficients. Every series knows
the order it is valid to, and arithmetic keeps that bookkeeping honest.
"""
from fractions import Fraction

from qseries import LaurentSeries, compare


def show(s):
    return " + ".join(f"{c}*q^{e}" for e, c in s.terms().items()) or "0"


# 1/(1-q) to order 8
geo = LaurentSeries.geometric(8)
print("1/(1-q)      :", show(geo))

# multiplying back by (1-q) gives 1 exactly
one_minus_q = LaurentSeries.from_terms({0: 1, 1: -1}, 8)
print("(1-q)/(1-q)  :", show(geo * one_minus_q))

# fractional exponents: q^(1/2) lives at scale 2
half = LaurentSeries.monomial(1, Fraction(1, 2), 4)
print("q^(1/2) + q  :", show(half + LaurentSeries.monomial(1, 1, 4)))

# negative powers are fine as long as the series is invertible
laurent = LaurentSeries.from_terms({-3: 1, 0: -1}, 6)   # q^-3 - 1
print("1/(q^-3 - 1) :", show(1 / laurent))

# the truncation order of a product is the smaller of what both sides can justify
a = LaurentSeries.from_terms({0: 1, 1: 2}, 10)
b = LaurentSeries.from_terms({0: 1, 1: 2}, 4)
print("orders       :", (a * b).q_order)

# comparing two series reports the first exponent where they differ
c = compare(geo, geo + LaurentSeries.monomial(3, 5, 8))
print("comparison   :", c)

# and a series evaluates numerically with a tail bound
print("1/(1-q) at 0.1:", LaurentSeries.geometric(40).evaluate(0.1))
