from fractions import Fraction
from math import prod

import pytest

from fqcensus import formulas as F

QS = (2, 3, 5)


def test_gauss_examples():
    assert F.gauss_binom(7, 0, 3) == 1
    assert F.gauss_binom(2, 1, 2) == 3
    assert F.gauss_binom(4, 2, 2) == 35
    assert F.gauss_binom(2, 3, 2) == 0


def test_gauss_pascal_rule():
    # [n, k] = [n-1, k-1] + q^k [n-1, k]
    for q in QS:
        for n in range(1, 10):
            for k in range(1, n + 1):
                assert F.gauss_binom(n, k, q) == F.gauss_binom(n - 1, k - 1, q) + q**k * F.gauss_binom(n - 1, k, q)


def test_psi_examples():
    assert F.psi(5, 0, 7) == 1
    assert F.psi(3, 2, 2) == 24
    assert F.psi(3, 1, 3) == 24


@pytest.mark.parametrize("n,k", [(2, 2), (2, 3), (3, -1)])
def test_psi_domain(n, k):
    with pytest.raises(ValueError):
        F.psi(n, k, 2)


def test_bad_q():
    with pytest.raises(ValueError):
        F.gauss_binom(2, 1, 1)


def test_sigma_examples():
    assert F.sigma_formula(6, 3, 3, 5) == 1
    assert F.sigma_formula(4, 2, 1, 2) == 18
    assert F.sigma_formula(2, 1, 0, 2) == 2


def test_sigma_sums_to_gauss_binomial():
    for q in QS:
        for n in range(1, 9):
            for k in range(n + 1):
                total = sum(F.sigma_formula(n, k, l, q) for l in range(k + 1))
                assert total == F.gauss_binom(n, k, q)


def test_gl_order_examples():
    assert F.gl_order(0, 2) == 1
    assert F.gl_order(1, 2) == 1
    assert F.gl_order(2, 2) == 6
    assert F.gl_order(2, 3) == 48


def test_mu_examples():
    assert F.mu(0, 0, 2) == 1
    assert F.mu(2, 1, 2) == 2
    for k in range(1, 6):
        assert F.mu(k, k, 3) == 0


def test_tau_examples():
    assert F.tau_recurrence(0, 0, 2) == 1
    assert F.tau_recurrence(2, 2, 2) == 0
    assert F.tau_recurrence(2, 1, 2) == 4
    assert F.tau_recurrence(1, 1, 2) == 0
    assert F.tau_closed(1, 0, 3) == 2
    assert F.tau_closed(2, 1, 2) == 4
    for q in QS:
        assert F.tau_closed(3, 3, q) == 0


def test_tau_closed_at_l_zero_is_gl_order():
    for q in QS:
        for k in range(0, 12):
            assert F.tau_closed(k, 0, q) == F.gl_order(k, q)


@pytest.mark.parametrize("q", QS)
def test_recurrence_equals_closed_form(q):
    for k in range(31):
        for l in range(k + 1):
            assert F.tau_recurrence(k, l, q) == F.tau_closed(k, l, q), (k, l)


@pytest.mark.parametrize("q", QS)
def test_psi_from_sum(q):
    for n in range(1, 13):
        for k in range(n):
            assert F.psi_from_sum(n, k, q) == F.psi(n, k, q)


def test_psi_from_sum_examples():
    assert F.psi_from_sum(4, 0, 2) == 1
    assert F.psi_from_sum(3, 2, 2) == 24
    assert F.psi_from_sum(3, 2, 3) == 432
    with pytest.raises(ValueError):
        F.psi_from_sum(3, 3, 2)


def test_tau_psi_relation():
    assert F.tau_psi_relation(2, 1, 2)
    assert F.tau_psi_relation(4, 2, 2)
    assert F.tau_psi_relation(3, 1, 5)
    for q in QS:
        for n in range(1, 8):
            for k in range(n):
                assert F.tau_psi_relation(n, k, q)


def test_delta_examples():
    assert F.delta(4, 0, 3) == 1
    assert F.delta(2, 1, 2) == Fraction(1, 2)
    assert F.delta(3, 2, 2) == Fraction(3, 8)
    with pytest.raises(ValueError):
        F.delta(2, 2, 2)


def test_delta_times_total_is_psi():
    for q in QS + (4, 7):
        for n in range(1, 7):
            for k in range(n):
                d = F.delta(n, k, q)
                assert d * q ** (n * k) == F.psi(n, k, q)
                assert d == prod((1 - Fraction(1, q ** (n - i)) for i in range(1, k + 1)), start=Fraction(1))
