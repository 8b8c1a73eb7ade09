"""Acceptance checks, one printed PASS/FAIL line per criterion.

The lines are repeated in the pytest terminal summary. ``-s`` shows them
inline as well.
"""
import math
import sys
import time
from fractions import Fraction

import pytest

from qseries import arith, catalog, hyper, numerics, wz
from qseries.products import product_side, psi_product, psi_sum, q2_rhs
from qseries.series import compare

QID_HEAD = [1, 2, -1, 0, 3, -6, 3, 8, -16, 8, 10]
EPS = (0.1, 0.03, 0.01, 0.003, 0.001)
LINES = []  # collected for the terminal summary


def report(number, title, ok, elapsed, budget=None, note=""):
    status = "PASS" if ok else "FAIL"
    if budget is not None and elapsed > budget:
        status = "FAIL"
        note = (note + "; " if note else "") + f"over the {budget:g}s budget"
    line = f"[{status}] criterion {number:>2}: {title} ({elapsed:.2f}s)"
    if note:
        line += f" -- {note}"
    LINES.append(line)
    print(line)
    return status == "PASS"


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_criterion_01_pi2_four_routes():
    with Timer() as t:
        routes = catalog.pi2_routes(500)
        names = list(routes)
        bad = [(a, b) for i, a in enumerate(names) for b in names[i + 1:] if not compare(routes[a], routes[b])]
    assert report(1, "pi2 routes agree pairwise to order 500", not bad and len(names) == 4, t.elapsed, 10,
                  f"mismatching pairs {bad}" if bad else ", ".join(names))


def test_criterion_02_qid():
    with Timer() as t:
        lhs, rhs = hyper.qid_lhs(300), product_side("qid.rhs", 300)
        c = compare(lhs, rhs)
        head = lhs.coefficients(11)
    ok = bool(c) and head == QID_HEAD and rhs.coefficients(11) == QID_HEAD
    assert report(2, "q-identity to order 300 with printed head", ok, t.elapsed, 10,
                  "head " + ", ".join(str(x) for x in head))


def test_criterion_03_q2_two_routes():
    with Timer() as t:
        lhs, rhs = hyper.q2_lhs(300), q2_rhs(300)
        direct = compare(lhs, rhs)
        tele = compare(wz.q2_from_telescoping(300), lhs)
    assert report(3, "pi^2 q-analogue direct and via telescoping at a=1/2", bool(direct) and bool(tele), t.elapsed, 20,
                  f"direct={bool(direct)} telescoping={bool(tele)}")


def test_criterion_04_ramanujan_type_pair():
    with Timer() as t:
        exact = [bool(compare(f(300), product_side(f"gl{i}.rhs", 300)))
                 for i, f in ((1, hyper.gl1_lhs), (2, hyper.gl2_lhs))]
        limits = [hyper.gl_limit_check(i, 300) for i in (1, 2)]
    ok = all(exact) and all(r.ok and r.stable_from <= r.order for r in limits)
    note = "exact " + str(exact) + "; stable from N=" + ", ".join(str(r.stable_from) for r in limits)
    assert report(4, "both 6n+1 q-analogues exact and as stabilized limits", ok, t.elapsed, 30, note)


def test_criterion_05_wz_grid():
    with Timer() as t:
        grids = [wz.wz_grid(a, 25, 25, 150) for a in (0, Fraction(1, 2))]
    failures = sum(len(g.failures) for g in grids)
    assert report(5, "WZ relation on 26x26 grid, a in {0, 1/2}, order 150", failures == 0, t.elapsed, 60,
                  f"{failures} failing points")


def test_criterion_06_divisor_counts():
    with Timer() as t:
        tb = arith.t2_brute_table(5000)
        rb = arith.r2_brute_table(8 * 2000 + 5)
        t2_ok = all(tb[n] == arith.t2_formula(n) for n in range(5001))
        r2_ok = all(rb[m] == arith.r2_formula(m) for m in range(1, 5001))
        rel_ok = all(8 * tb[n] == rb[8 * n + 5] for n in range(2001))
    assert report(6, "t2 and r2 brute force vs divisor formulas, 8 t2(n) = r2(8n+5)", t2_ok and r2_ok and rel_ok,
                  t.elapsed, 30, f"t2={t2_ok} r2={r2_ok} relation={rel_ok}")


def test_criterion_07_gauss_psi():
    with Timer() as t:
        ok = bool(compare(psi_sum(1000), psi_product(1000)))
    assert report(7, "Gauss psi sum equals product to order 1000", ok, t.elapsed, 5)


def test_criterion_08_classical():
    checks = [
        ("guillera", 40, math.pi**2 / 2, 1e-10),
        ("q2-limit", 41, math.pi**2 / 16, 1e-10),
        ("ram-6n1", 40, 4 / math.pi, 1e-10),
        ("ram-6n1-alt", 40, 2 * math.sqrt(2) / math.pi, 1e-10),
        ("sun-conj", 60, math.pi**2 / 2, 1e-8),
    ]
    with Timer() as t:
        errs = {name: abs(numerics.classical_series(name, n) - target) for name, n, target, _ in checks}
    ok = all(errs[name] < tol for name, _, _, tol in checks)
    note = ", ".join(f"{k}={v:.1e}" for k, v in errs.items())
    assert report(8, "classical partial sums hit their targets", ok, t.elapsed, None, note)


def _limit_line(r):
    return f"{r.expr} vs {r.target:.6f}: final error {r.final_error:.2e}, monotone={r.monotone}"


def test_criterion_09_q_limits():
    with Timer() as t:
        runs = [
            numerics.q_limit("pi", EPS, target=math.pi / 2),
            numerics.q_limit("pi2", EPS, target=math.pi),
            numerics.q_limit("qid", EPS, target=math.pi**2 / 4),
        ]
        # informational: the normalisation whose limit really is pi, and the pi2 limit at its actual value
        side = [numerics.q_limit("pi2-gamma", EPS), numerics.q_limit("pi2", EPS, target=math.pi / 2)]
    ok = all(r.converged(1e-2) for r in runs)
    note = "; ".join(_limit_line(r) for r in runs)
    note += " | also " + "; ".join(_limit_line(r) for r in side)
    assert report(9, "q -> 1 limits, monotone with final error < 1e-2", ok, t.elapsed, None, note)


def test_criterion_10_negative_control():
    entry = catalog.perturbed(catalog.default_catalog().get("qid"), 5)
    with Timer() as t:
        r = catalog.verify_entry(entry, 11)
    ok = r.status == "mismatch" and r.first_mismatch == {"exponent": "5", "lhs": "-6", "rhs": "-5"}
    assert report(10, "perturbed entry reported at the perturbed exponent", ok, t.elapsed, None,
                  f"{r.status} {r.first_mismatch}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
