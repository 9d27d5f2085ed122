from fractions import Fraction as F
from math import factorial

import pytest

from qmoments.classical import (double_factorial_odd, gue_moment,
                                gue_randomized_residual,
                                hahn_representation_residuals,
                                ht_recurrence_residual, hz_genfunc_residual,
                                hz_recurrence_residual, lue_moment,
                                lue_moment_schur, lue_randomized_residual)


def test_gue_values():
    for n in range(1, 9):
        assert gue_moment(0, n) == 1
        assert gue_moment(1, n) == n
        assert gue_moment(2, n) == 2 * n * n + 1
    assert gue_moment(2, 3) == 19


def test_gue_positive_integers():
    for k in range(9):
        for n in range(1, 9):
            v = gue_moment(k, n)
            assert v.denominator == 1 and v > 0


def test_gue_n1_is_double_factorial():
    for k in range(9):
        assert gue_moment(k, 1) == double_factorial_odd(k)


def test_hz_recurrence():
    for k, n in [(1, 3), (2, 2), (4, 5)]:
        assert hz_recurrence_residual(k, n) == 0
    for k in range(1, 9):
        for n in range(1, 9):
            assert hz_recurrence_residual(k, n) == 0


def test_hz_genfunc():
    for k in (0, 1, 3):
        assert hz_genfunc_residual(k, 10) == 0


def test_lue_values():
    for n in range(1, 7):
        for alpha in range(4):
            assert lue_moment(1, n, alpha) == n + alpha
    for k in range(1, 7):
        for alpha in range(4):
            assert lue_moment(k, 1, alpha) == F(factorial(k + alpha), factorial(alpha))


def test_ht_recurrence():
    for k, n, alpha in [(1, 2, 0), (2, 3, 1), (3, 2, 2)]:
        assert ht_recurrence_residual(k, n, alpha) == 0
    for k in range(1, 9):
        for n in range(1, 9):
            for alpha in range(4):
                assert ht_recurrence_residual(k, n, alpha) == 0


def test_hahn_representations():
    for n in range(1, 5):
        for alpha in range(3):
            assert hahn_representation_residuals(1, n, alpha) == (0, 0)
    for k, n, alpha in [(3, 2, 1), (4, 3, 0), (6, 6, 3), (2, 5, 2)]:
        assert hahn_representation_residuals(k, n, alpha) == (0, 0)


def test_lue_schur_route():
    for k in range(1, 6):
        for n in range(1, 5):
            for alpha in range(4):
                assert lue_moment_schur(k, n, alpha) == lue_moment(k, n, alpha)


def test_randomized_residuals():
    for k, alpha in [(1, 0), (2, 1), (4, 3)]:
        assert lue_randomized_residual(k, alpha, 8) == 0
    # coefficient of z^0 on both sides is the n = 1 moment
    assert lue_randomized_residual(3, 2, 1) == 0
    for k in (0, 1, 3):
        assert gue_randomized_residual(k, 10) == 0


def test_guards():
    with pytest.raises(ValueError):
        gue_moment(-1, 2)
    with pytest.raises(Exception):
        lue_moment(0, 1, 0)
