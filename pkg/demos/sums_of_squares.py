"""
Triangular numbers and sums of two squares
==========================================

Counting n = T(x) + 4 T(y) by brute force against a divisor formula, and
the bridge to sums of two squares through 8n + 5.
"""
from qseries import arith

for n in range(12):
    print(n, arith.t2_brute(n), arith.t2_formula(n))

tb = arith.t2_brute_table(2000)
rb = arith.r2_brute_table(8 * 2000 + 5)
print("8 t2(n) = r2(8n+5) up to 2000:", all(8 * tb[n] == rb[8 * n + 5] for n in range(2001)))

# the same counts come out of a Lambert series
print("Lambert coefficients agree to 2000:", bool(arith.lambert_coefficient_check(2000)))
print(arith.t2_table_csv(5))
