from fractions import Fraction

import pytest

from qseries.products import (
    INF,
    NonTermination,
    PochSpec,
    PoleError,
    QMonomial,
    QProduct,
    binom,
    poch,
    product_side,
    psi_product,
    psi_sum,
    q,
    qpoch,
    triangular,
)
from qseries.series import LaurentSeries, compare

import oracles

H = Fraction(1, 2)


def as_series(p, n):
    return LaurentSeries.from_terms(p, n)


def test_qmonomial_arithmetic():
    m = q(2, -1) * q(H)
    assert m == QMonomial(-1, Fraction(5, 2))
    assert q(3) / q(1) == q(2)
    assert str(q(H, -1)) == "-q^(1/2)"
    with pytest.raises(TypeError):
        QMonomial(0.5, 1)


def test_finite_poch_small():
    s = qpoch(q(1), 2, 2).series(10)
    assert s.terms() == {0: 1, 1: -1, 3: -1, 4: 1}


def test_finite_poch_minus_one():
    s = qpoch(-1, 3).series(10)
    assert s.terms() == {0: 2, 1: 2, 2: 2, 3: 2}


@pytest.mark.parametrize("c,e,base,count", [(1, 1, 1, 5), (-1, 1, 2, 4), (2, 3, 2, 3), (Fraction(1, 3), 2, 1, 6)])
def test_finite_poch_against_oracle(c, e, base, count):
    s = qpoch(q(e, c), count, base).series(30)
    assert compare(s, as_series(oracles.poch(c, e, base, count, 30), 30))


@pytest.mark.parametrize("c,e,base", [(1, 1, 1), (1, 1, 2), (-1, 2, 2), (1, 4, 8)])
def test_infinite_poch_against_oracle(c, e, base):
    n = 60
    count = (n - e) // base + 1
    s = qpoch(q(e, c), INF, base).series(n)
    assert compare(s, as_series(oracles.poch(c, e, base, count, n), n))


def test_infinite_poch_inverse_against_oracle():
    n = 50
    s = (QProduct() / qpoch(q(1), INF, 2)).series(n)
    assert compare(s, as_series(oracles.poch_inverse(1, 1, 2, n, n), n))


def test_poch_recurrence():
    for n in range(8):
        lhs = qpoch(q(H, -1), n + 1, 2).series(40)
        rhs = qpoch(q(H, -1), n, 2).series(40) * binom(q(H + 2 * n, -1)).series(40)
        assert compare(lhs, rhs)


def test_real_index_integer_agrees_with_finite():
    for n in range(6):
        real = qpoch(q(1), Fraction(n), 2).series(40)
        assert compare(real, qpoch(q(1), n, 2).series(40))


def test_real_index_half():
    # (q;q^2)_(1/2) = (q;q^2)_inf / (q^2;q^2)_inf
    real = poch(PochSpec(q(1), 2, H), 40)
    ratio = (qpoch(q(1), INF, 2) / qpoch(q(2), INF, 2)).series(40)
    assert compare(real, ratio)
    oracle = oracles.pmul(oracles.poch(1, 1, 2, 20, 40), oracles.poch_inverse(1, 2, 2, 20, 40), 40)
    assert compare(real, as_series(oracle, 40))


def test_minus_one_extraction():
    for n in range(1, 6):
        lhs = qpoch(-1, 2 * n).series(40)
        rhs = qpoch(q(1, -1), 2 * n - 1).series(40).scalar(2)
        assert compare(lhs, rhs)


def test_zero_factor_is_pole_in_denominator():
    with pytest.raises(PoleError):
        (QProduct() / qpoch(q(-2), 3)).series(10)


def test_zero_factor_in_numerator():
    assert qpoch(q(-2), 3).is_zero()
    assert qpoch(q(-2), 3).series(10).is_zero()


def test_negative_exponent_normalisation():
    # 1 - q^-3 = -q^-3 (1 - q^3)
    s = binom(q(-3)).series(10)
    assert s.terms() == {-3: -1, 0: 1}
    inv = (QProduct() / binom(q(-3))).series(12)
    assert inv.terms() == {3: -1, 6: -1, 9: -1}


def test_nonpositive_base():
    with pytest.raises(NonTermination):
        qpoch(q(1), INF, 0)


def test_triangular():
    assert [triangular(x) for x in (0, 4, 10)] == [0, 10, 55]


def test_psi_sum_examples():
    assert psi_sum(11).terms() == {0: 1, 1: 1, 3: 1, 6: 1, 10: 1}
    assert psi_sum(1).terms() == {0: 1}
    assert psi_sum(20)[7] == 0


def test_gauss_psi():
    assert compare(psi_sum(200), psi_product(200))
    p = psi_product(10)
    assert p[0] == 1 and p[3] == 1


def test_pi2_rhs_coefficients():
    s = product_side("pi2.rhs", 6)
    t2 = [oracles.count_t2(n) for n in range(6)]
    assert s.coefficients() == t2 == [1, 1, 0, 1, 1, 1]


def test_pi2_rhs_is_psi_psi4():
    n = 200
    psi4 = psi_sum(50).substitute_power(4)
    assert compare(product_side("pi2.rhs", n), psi_sum(n) * psi4)


def test_qid_rhs_printed_expansion():
    assert product_side("qid.rhs", 11).coefficients() == [1, 2, -1, 0, 3, -6, 3, 8, -16, 8, 10]


def test_pi1_rhs_is_psi_q2_squared():
    s = product_side("pi1.rhs", 60)
    assert s[2] == 2
    psi2 = psi_sum(30).substitute_power(2)
    assert compare(s, psi2 * psi2)


def test_unknown_side():
    with pytest.raises(KeyError):
        product_side("nope.rhs", 5)


def test_evaluate_matches_series():
    expr = qpoch(q(2), INF, 2) / qpoch(q(1), INF, 2)
    assert expr.evaluate(0.3) == pytest.approx(psi_sum(80).evaluate(0.3).value, rel=1e-13)


def test_evaluate_real_index():
    expr = qpoch(q(1), H, 2)
    direct = 1.0
    for j in range(2000):
        direct *= (1 - 0.5 ** (1 + 2 * j)) / (1 - 0.5 ** (2 + 2 * j))
    assert expr.evaluate(0.5) == pytest.approx(direct, rel=1e-12)


def test_evaluate_pole():
    with pytest.raises(PoleError):
        (QProduct() / qpoch(q(-1), 2)).evaluate(0.5)
