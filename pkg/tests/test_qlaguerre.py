from fractions import Fraction as F
from math import factorial

import pytest

from qmoments.classical import lue_moment
from qmoments.errors import Divergent, InvalidOrder, ZeroDenominator
from qmoments.qarith import q_pochhammer
from qmoments.qlaguerre import (bigqjacobi_recurrence_residual, m_ql_hooksum,
                                m_ql_hyper, m_ql_randomized_bigqjacobi,
                                m_ql_randomized_hyper, m_ql_schur,
                                randomized_series_residual)


def qint2(n, q):
    return (1 - (q * q) ** n) / (1 - q * q)


def test_single_particle_anchor():
    for q in (F(1, 2), F(2, 5)):
        for alpha in (0, 1, 3):
            assert m_ql_hyper(1, 1, alpha, q) == q**-alpha * qint2(1 + alpha, q)
    assert m_ql_hyper(1, 1, 0, F(1, 2)) == 1
    assert m_ql_hooksum(1, 1, 0, F(3, 7)) == 1


def test_first_moment_any_n():
    for q in (F(1, 2), F(1, 3)):
        for alpha in (0, 2):
            for n in (1, 2, 3, 4):
                want = (q ** (2 - 2 * n - alpha) * qint2(n, q)
                        * qint2(n + alpha, q) / n)
                assert m_ql_hyper(1, n, alpha, q) == want
                assert m_ql_schur(1, n, alpha, q) == want


def test_moment_at_n1_factorial_form():
    q = F(1, 2)
    Q = q * q
    for alpha in (0, 1, 2):
        for k in (1, 2, 3, 4):
            pref = F(1)
            for i in range(1, k + 1):
                pref *= (1 - Q ** (alpha + i)) / (1 - Q)
            assert m_ql_hyper(k, 1, alpha, q) == q ** (-alpha * k) * pref


def test_triple_equality_spot():
    q = F(1, 2)
    assert m_ql_hyper(2, 1, 0, q) == m_ql_hooksum(2, 1, 0, q) == m_ql_schur(2, 1, 0, q)
    assert m_ql_hyper(3, 2, 1, q) == m_ql_hooksum(3, 2, 1, q) == m_ql_schur(3, 2, 1, q)


def test_invalid_order():
    with pytest.raises(InvalidOrder):
        m_ql_hyper(0, 1, 0, F(1, 2))
    with pytest.raises(InvalidOrder):
        m_ql_schur(0, 1, 0, F(1, 2))


def test_randomized_hyper_at_zero():
    q = F(1, 2)
    for k in (1, 2, 3):
        for alpha in (0, 2):
            got = m_ql_randomized_hyper(k, F(0), alpha, q)
            assert got.bound == 0
            assert got.value == m_ql_hyper(k, 1, alpha, q)


def test_randomized_hyper_continuity_near_zero():
    q = F(1, 2)
    target = m_ql_hyper(1, 1, 0, q)
    prev = None
    for z in (F(1, 8), F(1, 64), F(1, 512)):
        got = m_ql_randomized_hyper(1, z, 0, q)
        gap = abs(got.value - target) + got.bound
        if prev is not None:
            assert gap < prev
        prev = gap


def test_randomized_hyper_domain():
    q = F(1, 2)
    with pytest.raises(Divergent):
        m_ql_randomized_hyper(1, q**2, 0, q)


def test_bigqjacobi_continuity_toward_zero():
    # z -> 0 limit of the exact route also recovers M_alpha(k, 1)
    q = F(1, 2)
    for k, alpha in ((1, 0), (2, 1)):
        target = m_ql_hyper(k, 1, alpha, q)
        prev = None
        for m in (4, 7, 10):
            gap = abs(m_ql_randomized_bigqjacobi(k, F(1, 2**m), alpha, q) - target)
            if prev is not None:
                assert gap < prev
            prev = gap


def test_bigqjacobi_two_term_value():
    # k = 1: manual two-term 3phi2 against the library value
    q = F(1, 2)
    Q = q * q
    z, alpha = F(1, 8), 0
    pref = (qint2(1 + alpha, q) * q_pochhammer(z, q**-2, 1)
            / q_pochhammer(z * Q, Q, 1) * q**0)
    series = 1 + ((1 - Q**-1) * (1 - Q**2) * Q
                  / ((1 - Q ** (alpha + 1)) * (1 - Q / z) * (1 - Q)))
    want = pref * series
    assert m_ql_randomized_bigqjacobi(1, z, alpha, q) == want


def test_bigqjacobi_equals_truncated_hyper():
    for q in (F(1, 2), F(1, 3)):
        for alpha in (0, 1, 2):
            for k in (1, 2, 3):
                for div in (2, 4):
                    z = q ** (2 * k) / div
                    exact = m_ql_randomized_bigqjacobi(k, z, alpha, q)
                    approx = m_ql_randomized_hyper(k, z, alpha, q)
                    assert abs(exact - approx.value) <= approx.bound


def test_bigqjacobi_guards():
    q = F(1, 2)
    with pytest.raises(ZeroDenominator):
        m_ql_randomized_bigqjacobi(1, F(0), 0, q)
    with pytest.raises(ZeroDenominator):
        m_ql_randomized_bigqjacobi(2, q**-2, 0, q)  # z = q^{-2} pole


def test_recurrence_examples():
    assert bigqjacobi_recurrence_residual(1, F(1, 8), 0, F(1, 2)) == 0
    # z = 1/16 = q^{2k} at (k, q) = (2, 1/2) is a pole of the family;
    # the recurrence holds at any admissible z nearby
    assert bigqjacobi_recurrence_residual(2, F(1, 17), 1, F(1, 2)) == 0
    assert bigqjacobi_recurrence_residual(2, F(1, 32), 1, F(1, 2)) == 0
    assert bigqjacobi_recurrence_residual(3, F(1, 32), 2, F(1, 3)) == 0
    with pytest.raises(ZeroDenominator):
        bigqjacobi_recurrence_residual(2, F(1, 16), 1, F(1, 2))


def test_series_residual():
    q = F(1, 2)
    r = randomized_series_residual(1, F(1, 32), 0, q, 30)
    assert r.value <= r.bound
    assert randomized_series_residual(2, F(0), 1, q, 10).value == 0
    # residual bound shrinks monotonically in the truncation order
    prev = None
    for n_max in (10, 20, 30, 40):
        r = randomized_series_residual(1, F(1, 32), 0, q, n_max)
        assert r.value <= r.bound
        if prev is not None:
            assert r.bound < prev
        prev = r.bound


@pytest.mark.parametrize("k,n,alpha", [(1, 1, 0), (1, 3, 2), (2, 2, 1), (3, 1, 0)])
def test_q_to_1_limit(k, n, alpha):
    target = lue_moment(k, n, alpha)
    errs = []
    for m in range(1, 6):
        q = 1 - F(1, 10**m)
        errs.append(abs(m_ql_hyper(k, n, alpha, q) - target))
    if all(e == 0 for e in errs):  # e.g. M_0(1,1) = 1 exactly for every q
        return
    assert all(errs[i] > errs[i + 1] for i in range(len(errs) - 1))
    assert errs[-1] < F(target) / 1000


def test_q_to_1_anchor_values():
    # Q_1(n; alpha) = n + alpha and Q_k(1; alpha) = (k+alpha)!/alpha!
    assert lue_moment(1, 3, 2) == 5
    assert lue_moment(3, 1, 1) == factorial(4)
