"""
From q to 1
===========

Classical series for pi and pi^2 summed exactly, then the q-products and
q-sums evaluated at q = 1 - eps.
"""
import math

from qseries import classical_series, q_limit
from qseries.numerics import CLASSICAL_TARGETS, LIMIT_EXPRESSIONS

for name, target in CLASSICAL_TARGETS.items():
    terms = 1000 if name == "leibniz" else 40
    v = classical_series(name, terms)
    print(f"{name:12s} {terms:5d} terms  {v:.15f}  error {abs(v - target):.1e}")

eps = (0.1, 0.03, 0.01, 0.003, 0.001)
for name, e in LIMIT_EXPRESSIONS.items():
    r = q_limit(name, eps)
    errs = " ".join(f"{x:.1e}" for x in r.errors)
    print(f"{name:10s} -> {e.target:.6f}  errors {errs}")

# (1 - q^2) is not the right normaliser for pi: the limit is half of it
r = q_limit("pi2", eps, target=math.pi)
print("pi2 against pi, final error", round(r.final_error, 4))
