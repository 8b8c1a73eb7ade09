"""
A q-analogue of the Leibniz series
==================================

The alternating sum of q^(k(k+3)/2) / (1 - q^(2k+1)) equals a quotient of
four infinite products. Two ways to build each side, all four agree.
"""
import math
import time

from qseries import catalog, q_limit
from qseries.series import compare


def show(xs):
    return ", ".join(str(x) for x in xs)


order = 500
t0 = time.perf_counter()
routes = catalog.pi2_routes(order)
for name, s in routes.items():
    print(f"{name:12s}", show(s.coefficients(16)))

names = list(routes)
for i, a in enumerate(names):
    for b in names[i + 1:]:
        print(f"{a} vs {b}: {bool(compare(routes[a], routes[b]))}")
print(f"order {order} in {time.perf_counter() - t0:.2f}s")

# Near q = 1, (1 - q^2) times either side tends to pi/2
r = q_limit("pi2", (0.1, 0.01, 0.001))
for eps, v in zip(r.eps, r.values):
    print(f"eps={eps:<6} value={v:.6f}")
print("pi/2 =", math.pi / 2)
