"""
A q-WZ pair and its telescoping
===============================

F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k) is checked coefficient by
coefficient. Summing it over a grid and cancelling the common factor
reproduces the pi^2 q-series.
"""
from fractions import Fraction

from qseries import hyper, wz
from qseries.series import compare


def show(xs):
    return ", ".join(str(x) for x in xs)


half = Fraction(1, 2)

print("pair relation at (n, k) = (3, 2), a = 1/2:", bool(wz.wz_relation_check(3, 2, half, 60)))

grid = wz.wz_grid(half, 6, 6, 60)
print("grid:", grid.to_dict())

t = wz.telescope_check(half, order=80)
print(f"telescoping with {t.n_terms} x {t.k_terms} terms: {t.ok}")

s = wz.q2_from_telescoping(80)
print("from telescoping:", show(s.coefficients(10)))
print("direct sum      :", show(hyper.q2_lhs(80).coefficients(10)))
print("agree:", bool(compare(s, hyper.q2_lhs(80))))

# at q = 1 the pair becomes a classical one with rational values
for n in range(3):
    print([str(wz.classical_pair(n, k).F) for k in range(4)])
