from fractions import Fraction

import pytest

from qseries import hyper, wz
from qseries.products import INF, QProduct, binom, q, q2_rhs, qpoch
from qseries.series import LaurentSeries, compare

H = Fraction(1, 2)


def test_b_empty_products():
    assert wz.b_q(0, 0, 0, 10).terms() == {0: 1}


def test_b_one_zero():
    s = wz.b_q(1, 0, 0, 30)
    direct = (QProduct(1, 2) * binom(q(1), 3) / (binom(q(2), 3) * QProduct(2) * binom(q(1, -1)))).series(30)
    assert compare(s, direct)
    assert s[2] == Fraction(1, 2)


def test_b_half_index_two_routes():
    # (q;q^2)_(1/2)^3 / (q^2;q^2)_(1/2)^3 = (q;q^2)_inf^6 / ((1-q)^3 (q^2;q^2)_inf^6)
    s = wz.b_q(0, 1, H, 40)
    assert s.scale == 2
    closed = (
        QProduct(1, Fraction(1, 2) + 2) * qpoch(q(1), INF, 2) ** 6 / qpoch(q(2), INF, 2) ** 6
        * binom(q(1), -1) / (binom(q(3), 2) * qpoch(-1, 1))
    )
    assert compare(s, closed.series(40))


def test_f_vanishes_at_zero():
    for k in range(5):
        assert wz.f_q(0, k, 0, 20).is_zero()


@pytest.mark.parametrize("k", [0, 1, 3])
def test_f_half_closed_form(k):
    assert compare(wz.f_q(0, k, H, 40), wz.f_half_closed_form(k).series(40))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_g_half_closed_form(n):
    body = wz.g_expr(n, 0, H).series(40)
    assert compare(body, wz.g_half_closed_form(n).series(40))


def test_wz_relation_examples():
    assert wz.wz_relation_check(0, 0, H, 120)
    assert wz.wz_relation_check(7, 3, H, 60)
    assert wz.wz_grid(0, 10, 10, 60).ok


def test_wz_relation_quarter_shift():
    for n, k in [(0, 0), (1, 2), (3, 1)]:
        assert wz.wz_relation_check(n, k, Fraction(1, 4), 40)
    # q^(2 (n + 1/4)^2) puts eighth powers in play
    assert wz.f_q(1, 0, Fraction(1, 4), 10).valuation == Fraction(25, 8)


def test_wz_relation_detects_tampering():
    lhs = wz.f_q(1, 0, 0, 30) - wz.f_q(0, 0, 0, 30)
    rhs = wz.g_q(0, 1, 0, 30) - wz.g_q(0, 0, 0, 30) + LaurentSeries.monomial(1, 7, 30)
    c = compare(lhs, rhs)
    assert not c and c.exponent == 7


def test_grid_report_dict():
    d = wz.wz_grid(H, 2, 2, 30).to_dict()
    assert d["status"] == "verified" and d["points"] == 9 and d["a"] == "1/2"


def test_telescope_half():
    t = wz.telescope_check(H, order=100)
    assert t.ok
    assert t.n_terms >= 1 and t.k_terms >= 1


def test_telescope_order_one_constant_terms():
    # the constant term lives at q^(1/2) before the common factor is divided out
    t = wz.telescope_check(H, order=1)
    assert t.ok
    q2 = wz.q2_from_telescoping(1)
    assert q2.terms() == {0: Fraction(1, 2)}


def test_telescope_insufficient_terms():
    with pytest.raises(wz.InsufficientTerms):
        wz.telescope_check(H, n_terms=2, order=100)
    with pytest.raises(wz.InsufficientTerms):
        wz.telescope_check(H, k_terms=3, order=100)


def test_q2_through_telescoping():
    s = wz.q2_from_telescoping(150)
    assert compare(s, hyper.q2_lhs(150))
    assert compare(s, q2_rhs(150))


def test_g_valuation_quadratic():
    vals = [wz.g_valuation(n, 0, H) for n in range(8)]
    assert vals == [2 * (n + H) ** 2 for n in range(8)]


def test_g_tail_valuation_grows():
    vals = [wz.g_tail_valuation(k, H) for k in range(6)]
    assert all(b - a == 2 for a, b in zip(vals, vals[1:]))


def test_classical_pair_values():
    assert wz.classical_pair(0, 0).B == 1
    assert wz.classical_pair(1, 0).F == Fraction(1, 4)
    assert wz.classical_pair(0, 1).G == Fraction(5, 4)


def test_classical_pair_relation():
    for n in range(6):
        for k in range(6):
            f1, f0 = wz.classical_pair(n + 1, k), wz.classical_pair(n, k)
            g1 = wz.classical_pair(n, k + 1)
            assert f1.F - f0.F == g1.G - f0.G


def test_classical_limit():
    r = wz.classical_limit_check(1, 1, [0.1, 0.05, 0.01])
    assert r.monotone
    r0 = wz.classical_limit_check(0, 0, [0.1, 0.01])
    assert r0.f_errors == [0.0, 0.0]
    g = wz.g_q_value(2, 0, 0.99)
    exact = float(wz.classical_pair(2, 0).G)
    assert abs(g - exact) < 0.05 * exact
