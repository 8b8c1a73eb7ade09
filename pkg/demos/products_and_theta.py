"""
q-Pochhammer products and Gauss's psi
======================================

Products are kept symbolic until they are expanded, so infinite products
and real-index Pochhammer symbols behave like ordinary values.
"""
from fractions import Fraction

from qseries import INF, binom, psi_product, psi_sum, q, qpoch, compare
from qseries.products import PRODUCT_EXPRESSIONS


def show(s):
    return " + ".join(f"{c}*q^{e}" for e, c in s.terms().items())


# (q;q)_inf is Euler's pentagonal series
euler = qpoch(q(1), INF).series(30)
print("(q;q)_inf:", show(euler))

# finite symbols cancel symbolically before anything is expanded
ratio = qpoch(q(1), 7) / qpoch(q(1), 5)
print("(q;q)_7 / (q;q)_5 =", ratio)
print("  expanded:", show(ratio.series(20)))

# a half-index symbol is the ratio of two infinite products
half = qpoch(q(1), Fraction(1, 2), 2)
print("(q;q^2)_(1/2):", show(half.series(8)))

# Gauss: sum of q^(n(n+1)/2) equals (q^2;q^2)_inf / (q;q^2)_inf
n = 1000
print("psi sum == product to order", n, ":", bool(compare(psi_sum(n), psi_product(n))))

# the product sides the catalog uses
for name in PRODUCT_EXPRESSIONS:
    print(f"  {name:8s}", ", ".join(str(c) for c in PRODUCT_EXPRESSIONS[name]().series(10).coefficients()))

# float evaluation of a product happens in log space
print("(q;q)_inf at q=0.9 ~", qpoch(q(1), INF).evaluate(0.9))
print("(1-q) at q=0.5      ", binom(q(1)).evaluate(0.5))
