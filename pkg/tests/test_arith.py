import csv
import io

import pytest

from qseries import arith
from qseries.arith import (
    lambert_coefficient_check,
    lambert_expand,
    r2_brute,
    r2_brute_table,
    r2_formula,
    t2_brute,
    t2_brute_table,
    t2_formula,
    triangular,
)
from qseries.products import psi_sum
from qseries.series import compare

import oracles


def test_triangular():
    assert (triangular(0), triangular(4), triangular(10)) == (0, 10, 55)


@pytest.mark.parametrize("n,count", [(0, 1), (2, 0), (5, 1), (4, 1)])
def test_t2_brute(n, count):
    assert t2_brute(n) == count == oracles.count_t2(n)


@pytest.mark.parametrize("n,count", [(2, 0), (4, 1), (5, 1), (0, 1)])
def test_t2_formula(n, count):
    assert t2_formula(n) == count


@pytest.mark.parametrize("m,count", [(5, 8), (3, 0), (25, 12), (1, 4), (65, 16)])
def test_r2(m, count):
    assert r2_brute(m) == count == r2_formula(m)


def test_domains():
    with pytest.raises(ValueError):
        t2_brute(-1)
    with pytest.raises(ValueError):
        r2_formula(0)


def test_tables_agree_with_single_counts():
    tb = t2_brute_table(300)
    assert tb == [t2_brute(n) for n in range(301)] == [oracles.count_t2(n) for n in range(301)]
    rb = r2_brute_table(300)
    assert rb[1:] == [r2_brute(m) for m in range(1, 301)]


def test_t2_bulk():
    tb = t2_brute_table(5000)
    assert all(tb[n] == t2_formula(n) for n in range(5001))


def test_r2_bulk():
    rb = r2_brute_table(5000)
    assert all(rb[m] == r2_formula(m) for m in range(1, 5001))


def test_bijection_step():
    tb = t2_brute_table(2000)
    rb = r2_brute_table(8 * 2000 + 5)
    assert all(8 * tb[n] == rb[8 * n + 5] for n in range(2001))


def test_t2_generating_function():
    n = 1000
    psi4 = psi_sum(250).substitute_power(4)
    gf = psi_sum(n) * psi4
    tb = t2_brute_table(n - 1)
    assert gf.coefficients() == tb


def test_lambert_expansions():
    assert lambert_expand("pi2", 6).coefficients() == [1, 1, 0, 1, 1, 1]
    assert lambert_expand("pi1", 3).coefficients() == [1, 0, 2]
    assert lambert_expand("q2rhs", 1).coefficients() == [pytest.approx(0.5)]
    with pytest.raises(KeyError):
        lambert_expand("nope", 5)


def test_lambert_check():
    assert lambert_coefficient_check(1)
    assert lambert_coefficient_check(6)
    assert lambert_coefficient_check(2000)


def test_lambert_q2rhs_against_naive():
    n = 40
    total = {}
    for k in range(n):
        inv = oracles.geometric_inverse(1, 2 * k + 1, n)
        total = oracles.padd(total, oracles.pmul({2 * k: 1}, oracles.pmul(inv, inv, n), n))
    half = {e: c / 2 for e, c in total.items()}
    from qseries.series import LaurentSeries

    assert compare(lambert_expand("q2rhs", n), LaurentSeries.from_terms(half, n))


def test_csv_table():
    rows = list(csv.reader(io.StringIO(arith.t2_table_csv(5))))
    assert rows[0] == ["n", "t2_brute", "t2_formula", "match"]
    assert rows[3] == ["2", "0", "0", "true"]
    assert len(rows) == 7
