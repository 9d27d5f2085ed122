"""Moments of the discrete q-Hermite ensemble, by every independent route.

M(k, N) denotes the 2k-th moment of the normalized one-point function.
Routes: residue decomposition, twin terminating 3phi2 sums, exact
generating-function expansion, and the negative-binomial randomization
(equal to a q-Hahn polynomial up to an explicit prefactor, hence
satisfying a three-term recurrence in k).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegreeOutOfRange, InvalidOrder
from .hyper import phi_terminating
from .pseries import poly_from_factors, poly_mul, series_div
from .qarith import q_double_factorial_odd, q_pochhammer, require_base, to_rational
from .qcalc import ApproxValue


def _ddf(k: int, q: Fraction) -> Fraction:
    """[2k-1]_{q^2}!! as used in every prefactor here."""
    return q_double_factorial_odd(k, q * q)


def _norm_prefactor(k: int, q: Fraction) -> Fraction:
    """q^{k(1-k)} [2k-1]_{q^2}!!, the generating-function normalizer."""
    return q ** (k * (1 - k)) * _ddf(k, q)


def residue_top(k: int, q: Fraction) -> Fraction:
    """The residue attached to the pole at q^{2k} (explicit product form)."""
    num = Fraction(1)
    for n in range(1, k + 1):
        num *= q ** (2 * n) + q ** (2 * k)
    den = Fraction(1)
    for n in range(0, k + 1):
        den *= 1 - q ** (2 * n + 2 * k)
    return _norm_prefactor(k, q) * q**k * num / den


def residue_at(k: int, a: int, q: Fraction) -> Fraction:
    """The residue attached to the pole at q^{-2a}, 0 <= a <= k."""
    if not (0 <= a <= k):
        raise ValueError("need 0 <= a <= k")
    num = q ** (k - 2 * a) * q ** (-2 * k * a)
    for n in range(1, k + 1):
        num *= 1 + q ** (2 * n + 2 * a)
    den = q ** (-2 * a) * (q ** (2 * k + 2 * a) - 1)
    for n in range(0, a):
        den *= 1 - q ** (2 * n - 2 * a)
    for n in range(a + 1, k + 1):
        den *= 1 - q ** (2 * n - 2 * a)
    return _norm_prefactor(k, q) * num / den


def _pole_sum(k: int, N: int, q: Fraction) -> Fraction:
    """sum_{a=0..k} q^{2Na} * residue_at(k, a, q), as a single exact sum."""
    tot = Fraction(0)
    for a in range(0, k + 1):
        tot += q ** (2 * N * a) * residue_at(k, a, q)
    return tot


def m_qh_residue(k: int, N: int, q: Fraction) -> Fraction:
    """M(k, N) from the residue decomposition.

    N M(k,N) = q^{-2Nk} res_top + sum_a q^{2Na} res_a, with res_top
    computed as minus the pole sum at N = 0 (one code path; the explicit
    product form is checked separately by saalschutz_residual).
    """
    if k < 1:
        raise InvalidOrder("k must be >= 1 (M(0, N) = 1 by normalization)")
    if N < 1:
        raise ValueError("N must be a positive integer")
    q = require_base(q)
    top = -_pole_sum(k, 0, q)
    return (q ** (-2 * N * k) * top + _pole_sum(k, N, q)) / N


def saalschutz_residual(k: int, q: Fraction) -> Fraction:
    """Pole sum at N=0 plus the explicit top residue; identically zero."""
    if k < 1:
        raise InvalidOrder("k must be >= 1")
    q = require_base(q)
    return _pole_sum(k, 0, q) + residue_top(k, q)


def m_qh_hyper(k: int, N: int, q: Fraction) -> Fraction:
    """M(k, N) as [2k-1]_{q^2}!!/N times two terminating 3phi2 values.

    Both series share parameters (-q^{2k+2}, q^{2k}, q^{-2k}; -q^2,
    q^{2k+2}) in base q^2 and differ only in the argument (q^2 versus
    q^{2(N+1)}).
    """
    if k < 1:
        raise InvalidOrder("k must be >= 1")
    if N < 1:
        raise ValueError("N must be a positive integer")
    q = require_base(q)
    Q = q * q
    uppers = [-(Q ** (k + 1)), Q**k, Q**-k]
    lowers = [-Q, Q ** (k + 1)]
    ph_fixed = phi_terminating(uppers, lowers, Q, Q)
    ph_moving = phi_terminating(uppers, lowers, Q, Q ** (N + 1))
    common = q_pochhammer(-Q, Q, k) / q_pochhammer(Q, Q, k)
    t1 = q ** (2 * k - 2 * N * k - k * k) * common / (1 - Q**k) * ph_fixed
    t2 = q ** (2 * k - k * k) * common / (Q**k - 1) * ph_moving
    return _ddf(k, q) * (t1 + t2) / N


def m_qh_genfunc_coeffs(k: int, q: Fraction, n_max: int):
    """First n_max+1 series coefficients (orders 0..n_max) of the moment
    generating function q^k L^{k+1} (-q^2/L; q^2)_k / ((q^{2k}-L)(L;q^2)_{k+1}).

    Exact polynomial long division; the order-N coefficient equals
    N M(k,N) / (q^{k(1-k)} [2k-1]_{q^2}!!).
    """
    if k < 1:
        raise InvalidOrder("k must be >= 1")
    if n_max > 64:
        raise ValueError("expansion order capped at 64")
    q = require_base(q)
    Q = q * q
    # numerator: q^k * L * prod_{i=0..k-1} (q^{2i+2} + L)
    num = poly_mul([Fraction(0), Fraction(1)],
                   poly_from_factors([(Q ** (i + 1), 1) for i in range(k)]))
    num = [q**k * c for c in num]
    # denominator: (q^{2k} - L) * prod_{i=0..k} (1 - L q^{2i})
    den = poly_mul([Q**k, Fraction(-1)],
                   poly_from_factors([(1, -(Q**i)) for i in range(k + 1)]))
    return series_div(num, den, n_max)


def m_qh_randomized(k: int, lam: Fraction, q: Fraction) -> Fraction:
    """Randomized moment sum_N N M(k,N) lam^{N-1} (1-lam)^2, closed form.

    q^{k(1-k)} [2k-1]_{q^2}!! q^{-k} (-q^2;q^2)_k (1-lam) /
    ((q^2;q^2)_k (1-lam q^{-2k})) * 3phi2(-q^{2k+2}, q^{-2k}, lam;
    -q^2, lam q^2; q^2, q^2). Exact for any rational lam off the poles;
    the defining series itself converges only for 0 <= lam < q^{2k}.
    """
    if k < 0:
        raise InvalidOrder("k must be >= 0")
    lam = to_rational(lam)
    q = require_base(q)
    Q = q * q
    if lam == Q**k and k >= 1:
        raise ZeroDivisionError("lam = q^{2k} is a pole of the closed form")
    ph = phi_terminating([-(Q ** (k + 1)), Q**-k, lam], [-Q, lam * Q], Q, Q)
    pref = (_norm_prefactor(k, q) * q**-k * q_pochhammer(-Q, Q, k) * (1 - lam)
            / (q_pochhammer(Q, Q, k) * (1 - lam * Q**-k)))
    return pref * ph


def m_qh_randomized_series(k: int, lam: Fraction, q: Fraction,
                           n_max: int) -> ApproxValue:
    """Partial sums of the defining randomized series with a geometric
    tail bound; requires lam < q^{2k} (the series' true domain)."""
    if k < 1:
        raise InvalidOrder("k must be >= 1")
    lam = to_rational(lam)
    q = require_base(q)
    if not (0 <= lam < q ** (2 * k)):
        raise ValueError("series converges only for 0 <= lam < q^{2k}")
    s = Fraction(0)
    for N in range(1, n_max + 1):
        s += N * m_qh_residue(k, N, q) * lam ** (N - 1) * (1 - lam) ** 2
    # N M(k,N) = q^{-2Nk} res_top + pole terms with |q^{2Na} res_a| bounded,
    # so |N M(k,N)| <= C rho^N with rho = q^{-2k} on the growing piece.
    top = abs(_pole_sum(k, 0, q))
    flat = sum(abs(residue_at(k, a, q)) for a in range(k + 1))
    rho = lam * q ** (-2 * k)
    # tail over N > n_max of (top*q^{-2Nk} + flat) lam^{N-1} (1-lam)^2
    tail = (1 - lam) ** 2 * (
        top * q ** (-2 * k) * rho**n_max / (1 - rho)
        + flat * lam**n_max / (1 - lam)
    )
    return ApproxValue(s, tail)


def m_qh_randomized_qhahn(k: int, K: int, q: Fraction) -> Fraction:
    """Randomized moment at lam = q^{-2K-2}, through the q-Hahn polynomial
    Q_k(q^{-2K-2}; -1, 1, K | q^2) with its full prefactor.

    Valid as a rational-function identity in lam (the series domain does
    not contain this lam); equals m_qh_randomized(k, q^{-2K-2}, q) exactly.
    """
    if k < 0:
        raise InvalidOrder("k must be >= 0")
    if K < 1 or k > K:
        raise DegreeOutOfRange("need 1 <= k <= K for the q-Hahn degree")
    q = require_base(q)
    Q = q * q
    lam = q ** (-2 * K - 2)
    # lower parameter lam*q^2 = q^{-2K}: same series as the q-Hahn display
    ph = phi_terminating([-(Q ** (k + 1)), Q**-k, lam], [-Q, Q**-K], Q, Q)
    pref = (_norm_prefactor(k, q) * q**-k * q_pochhammer(-Q, Q, k) * (1 - lam)
            / (q_pochhammer(Q, Q, k) * (1 - lam * Q**-k)))
    return pref * ph


def _qhahn_rec_ab(n: int, K: int, Q: Fraction):
    """Recurrence ingredients a_n, c_n of the q-Hahn family at
    (alpha, beta) = (-1, 1), base Q, lattice size K."""
    a_n = ((1 - Q ** (n - K)) * (1 + Q ** (n + 1)) ** 2
           / ((1 + Q ** (2 * n + 1)) * (1 + Q ** (2 * n + 2))))
    c_n = (Q ** (n - K) * (1 - Q**n) ** 2 * (1 + Q ** (n + K + 1))
           / ((1 + Q ** (2 * n)) * (1 + Q ** (2 * n + 1))))
    return a_n, c_n


def _rand_prefactor(k: int, lam: Fraction, q: Fraction) -> Fraction:
    Q = q * q
    return (_norm_prefactor(k, q) * q**-k * q_pochhammer(-Q, Q, k) * (1 - lam)
            / (q_pochhammer(Q, Q, k) * (1 - lam * Q**-k)))


def qhahn_recurrence_coeffs(n: int, K: int, q: Fraction):
    """Coefficients (A_n, B_n, C_n) with A_n M_{n+1} + B_n M_n - C_n M_{n-1} = 0
    for the randomized moments M_j = m_qh_randomized_qhahn(j, K, q).

    Obtained from the q-Hahn three-term recurrence
    a_n Q_{n+1} - (a_n + c_n - (1 - lam)) Q_n + c_n Q_{n-1} = 0 by
    conjugating with the moment prefactor ratios.
    """
    q = require_base(q)
    Q = q * q
    lam = q ** (-2 * K - 2)
    a_n, c_n = _qhahn_rec_ab(n, K, Q)
    p_prev, p_mid, p_next = (_rand_prefactor(j, lam, q) for j in (n - 1, n, n + 1))
    A = a_n * p_mid / p_next
    B = -(a_n + c_n - (1 - lam))
    C = -c_n * p_mid / p_prev
    return A, B, C


def qhahn_recurrence_residual(n: int, K: int, q: Fraction) -> Fraction:
    """A_n M_{n+1} + B_n M_n - C_n M_{n-1}, exact; identically zero."""
    if not (1 <= n <= K - 1):
        raise DegreeOutOfRange("need 1 <= n <= K-1")
    A, B, C = qhahn_recurrence_coeffs(n, K, q)
    m_prev = m_qh_randomized_qhahn(n - 1, K, q)
    m_mid = m_qh_randomized_qhahn(n, K, q)
    m_next = m_qh_randomized_qhahn(n + 1, K, q)
    return A * m_next + B * m_mid - C * m_prev
