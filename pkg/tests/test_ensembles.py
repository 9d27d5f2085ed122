from fractions import Fraction as F

import pytest

from qmoments.ensembles import (GaussianQMeasure, LaguerreQMeasure,
                                big_q_jacobi, classical_poly, fit_q_power,
                                measure_mass, monic_q_hermite,
                                onepoint_moment_oracle, orthonormality_sum,
                                q_hahn, q_hermite_norm_sq, q_hermite_sq,
                                q_laguerre_sq, wall_norm_sq, wall_poly)
from qmoments.errors import DegreeOutOfRange, ZeroPoint
from qmoments.qarith import q_pochhammer
from qmoments.qcalc import TruncationPolicy
from qmoments.qhermite import m_qh_residue
from qmoments.qlaguerre import m_ql_hyper

POL = TruncationPolicy(F(1, 10**30), 4096)
FAST = TruncationPolicy(F(1, 10**15), 4096)


def test_q_hermite_sq_basics():
    q = F(1, 2)
    assert q_hermite_sq(0, F(3, 7), q) == 1
    assert q_hermite_sq(2, F(1, 2), q) == F(64, 45)
    with pytest.raises(ZeroPoint):
        q_hermite_sq(1, F(0), q)


@pytest.mark.parametrize("q", [F(1, 2), F(2, 5)])
def test_q_hermite_sq_matches_monic_route(q):
    # display route == monic-recurrence route at all atoms |j| <= 10, n <= 6
    Q = q * q
    for n in range(7):
        for j in range(11):
            for sign in (1, -1):
                t = sign * Q**j
                display = q_hermite_sq(n, t, q)
                monic = monic_q_hermite(n, t, Q)
                assert display == monic * monic / q_hermite_norm_sq(n, Q)


def test_q_laguerre_sq_values():
    assert q_laguerre_sq(0, F(5, 3), 2, F(1, 4)) == 1
    # x = 1 is the zero of the degree-1 polynomial at this base
    assert q_laguerre_sq(1, F(1), 0, F(1, 2)) == 0
    assert q_laguerre_sq(1, F(1, 2), 0, F(1, 2)) == F(1, 8)
    # series at x = 0 collapses to the squared constant term
    Q = F(1, 3)
    got = q_laguerre_sq(3, F(0), 1, Q)
    pref = q_pochhammer(Q**2, Q, 3) * Q**3 / q_pochhammer(Q, Q, 3)
    assert got == pref  # 1phi1 at x = 0 sums to 1


@pytest.mark.parametrize("base", [F(1, 2), F(1, 3)])
@pytest.mark.parametrize("alpha", [0, 1, 3])
def test_q_laguerre_two_forms_agree(base, alpha):
    # the FormMismatch guard runs inside q_laguerre_sq; 20 sample points
    pts = [F(i, 7) for i in range(1, 11)] + [F(-i, 5) for i in range(1, 6)] \
        + [F(3, 2), F(8), F(-4), F(1, 64), F(0)]
    for n in range(9):
        for x in pts[: 20]:
            q_laguerre_sq(n, x, alpha, base)


def test_q_hahn_values():
    q = F(1, 2)
    assert q_hahn(0, F(3), F(-1), F(1), 4, q) == 1
    al, be, K = F(1, 3), F(1, 5), 5
    x = q**-1
    manual = 1 + ((1 - q**-1) * (1 - al * be * q**2) * (1 - x)
                  / ((1 - al * q) * (1 - q**-K) * (1 - q))) * q
    # 3phi2 second term: (q^{-1};q)_1 (al be q^2;q)_1 (x;q)_1 q / ...
    got = q_hahn(1, x, al, be, K, q)
    assert got == manual
    with pytest.raises(DegreeOutOfRange):
        q_hahn(6, F(1), al, be, 5, q)


def test_big_q_jacobi_values():
    q = F(1, 2)
    a, b, c = F(1, 3), F(1, 5), F(2, 7)
    assert big_q_jacobi(0, F(1), a, b, c, q) == 1
    x = F(0)
    manual = 1 + ((1 - q**-1) * (1 - a * b * q**2) * (1 - x) * q
                  / ((1 - a * q) * (1 - c * q) * (1 - q)))
    assert big_q_jacobi(1, x, a, b, c, q) == manual
    # exact evaluation at the x = aq point used by orthogonality arguments
    assert isinstance(big_q_jacobi(3, a * q, a, b, c, q), F)


def test_classical_poly():
    assert classical_poly("hermite", 0, F(5)) == 1
    assert classical_poly("hermite", 1, F(3)) == 3
    assert classical_poly("hermite", 2, F(2)) == 3   # x^2 - 1 at 2
    assert classical_poly("hermite", 3, F(0)) == 0
    assert classical_poly("laguerre", 0, F(2), (1,)) == 1
    assert classical_poly("hahn", 0, F(3), (1, 1, -4)) == 1
    assert classical_poly("dual_hahn", 0, F(0), (1, 1, -4)) == 1


def test_gaussian_measure_weights():
    q = F(1, 2)
    meas = GaussianQMeasure(q)
    assert meas.nu2 == 1 / (1 - q * q)
    assert GaussianQMeasure(q, "paper-q").nu2 == 1 / (1 - q)
    w0 = meas.weight(0, FAST)
    w3 = meas.weight(3, FAST)
    assert w0.value > w3.value > 0
    mass = measure_mass(meas, FAST)
    assert mass.contains(1)


def test_gaussian_orthonormality():
    meas = GaussianQMeasure(F(3, 5))
    for n in range(6):
        s = orthonormality_sum(meas, n, POL)
        assert s.contains(1) and s.bound <= F(1, 10**25)


def test_gaussian_oracle_odd_and_mass():
    meas = GaussianQMeasure(F(1, 2))
    assert onepoint_moment_oracle(meas, 3, 2, FAST).value == 0
    m = onepoint_moment_oracle(meas, 0, 4, FAST)
    assert m.contains(1)


def test_laguerre_weight_ratio_display_convention():
    # displayed atomic weights: w(Q^{n+1})/w(Q^n) = Q^{alpha+1}(1 + Q^{n+1})
    q = F(1, 2)
    Q = q * q
    meas = LaguerreQMeasure(q, 0, ladder="bilateral", weights="display")
    for n in range(-4, 5):
        got = meas.weight_unnormalized(n + 1) / meas.weight_unnormalized(n)
        assert got == Q ** (0 + 1) * (1 + Q ** (n + 1))
        assert got == meas.weight_ratio(n)


def test_laguerre_weight_ratio_orthogonal_convention():
    q = F(1, 2)
    Q = q * q
    meas = LaguerreQMeasure(q, 2, ladder="bilateral", weights="orthogonal")
    for n in range(-4, 5):
        got = meas.weight_unnormalized(n + 1) / meas.weight_unnormalized(n)
        assert got == Q**3 * (1 + Q**n)


@pytest.mark.parametrize("ladder", ["unilateral", "bilateral"])
def test_laguerre_mass_and_orthonormality(ladder):
    meas = LaguerreQMeasure(F(1, 2), 1, ladder=ladder)
    mass = measure_mass(meas, POL)
    assert mass.contains(1) and mass.bound <= F(1, 10**25)
    for n in range(6):
        s = orthonormality_sum(meas, n, POL)
        assert s.contains(1) and s.bound <= F(1, 10**25)


def test_wall_norms_exact():
    q = F(1, 2)
    Q = q * q
    a = Q**2
    # brute-force norm against the truncated ladder, generous cutoff
    for n in range(4):
        brute = sum((a * Q) ** j / q_pochhammer(Q, Q, j)
                    * wall_poly(n, Q**j, a, Q) ** 2 for j in range(200))
        norm = wall_norm_sq(n, a, Q) / q_pochhammer(a * Q, Q, 200)
        assert abs(brute - norm) < F(1, 10**40)


def test_oracle_factor_anchor():
    # q-Laguerre k=1, N=1 against q^{-alpha}[1+alpha]_{q^2}
    q = F(1, 2)
    Q = q * q
    for alpha in (0, 1, 2):
        meas = LaguerreQMeasure(q, alpha, ladder="unilateral")
        oracle = onepoint_moment_oracle(meas, 1, 1, POL)
        formula = q**-alpha * (1 - Q ** (1 + alpha)) / (1 - Q)
        assert formula == m_ql_hyper(1, 1, alpha, q)
        assert fit_q_power(formula, oracle, q) == -alpha


def test_gaussian_oracle_factor_spot():
    q = F(1, 3)
    meas = GaussianQMeasure(q)
    oracle = onepoint_moment_oracle(meas, 2, 1, POL)
    assert fit_q_power(m_qh_residue(1, 1, q), oracle, q) == 1


@pytest.mark.parametrize("make", [
    lambda: GaussianQMeasure(F(1, 2)),
    lambda: LaguerreQMeasure(F(1, 2), 1, ladder="unilateral"),
    lambda: LaguerreQMeasure(F(1, 2), 0, ladder="bilateral"),
])
def test_onepoint_density_mass(make):
    # the normalized one-point function is a probability measure for N <= 6
    meas = make()
    for n_particles in range(1, 7):
        m = onepoint_moment_oracle(meas, 0, n_particles, POL)
        assert m.contains(1) and m.bound <= F(1, 10**25)
