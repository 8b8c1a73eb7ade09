"""
Basic hypergeometric sums and stabilization
===========================================

Terminating and q-adically convergent sums share one engine. Limits in a
free parameter are taken by watching a window of coefficients settle.
"""
from qseries import PhiSpec, phi, q
from qseries import hyper
from qseries.series import compare


def show(d):
    return "{" + ", ".join(f"{e}: {c}" for e, c in d.items()) + "}"


# 1phi0(q^-2; ; q, q^3) is a polynomial, the q-binomial theorem says (q;q)_2
spec = PhiSpec(upper=[q(-2)], lower=[], base=1, argument=q(3), order=8)
print("1phi0:", show(phi(spec).terms()))

# a transformation, checked on a few monomial values of d
for d in (q(1), q(2), q(1, -1), q(3, -1)):
    ok = compare(hyper.ck2_lhs(d, 60), hyper.ck2_rhs(d, 60))
    print(f"d = {d}: sides agree to order 60 -> {bool(ok)}")

# the 3phi2 tends to 1 as d = -q^M runs off to infinity
s = hyper.stabilize(lambda M: hyper.ck3_stabilization(M, 20), 20)
print("stable from M =", s.index, "value", show(s.series.terms()))

# both 6n+1 q-analogues arise as N -> infinity in a terminating sum
for which in (1, 2):
    r = hyper.gl_limit_check(which, 40)
    print(f"path {which}: stable from N={r.stable_from}, matches both sides: {r.ok}")
