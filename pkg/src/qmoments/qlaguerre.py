"""Moments of the discrete q-Laguerre ensemble by three exact routes, the
negative-binomial randomization (a Big q-Jacobi polynomial up to an
explicit prefactor), and its three-term recurrence in the order k.

alpha is restricted to nonnegative integers so every prefactor stays
exactly rational.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import Divergent, InvalidOrder, ZeroDenominator
from .hyper import phi_terminating, phi_truncated
from .partitions import hook_character, hook_partition, schur_expectation_qlag
from .qarith import q_pochhammer, require_base, to_rational
from .qcalc import ApproxValue, TruncationPolicy, default_policy


def _validate(k: int, N: int, alpha: int, q: Fraction) -> Fraction:
    if k < 1:
        raise InvalidOrder("k must be >= 1 (M_alpha(0, N) = 1 by normalization)")
    if N < 1:
        raise ValueError("N must be a positive integer")
    if alpha < 0:
        raise ValueError("alpha must be a nonnegative integer")
    return require_base(q)


def m_ql_hyper(k: int, N: int, alpha: int, q: Fraction) -> Fraction:
    """k-th moment as a single terminating 3phi2 (base q^2, argument q^{-2k}).

    The summation stops at min(k-1, N-1): for N <= k the q^{2-2N} upper
    parameter terminates the series first.
    """
    q = _validate(k, N, alpha, q)
    Q = q * q
    ph = phi_terminating(
        [Q ** (1 - k), Q ** (1 - N), Q ** (1 - N - alpha)],
        [Q ** (1 - N - k), Q ** (1 - N - alpha - k)],
        Q, Q**-k)
    pref = (q ** (k * (2 - 2 * N - alpha)) / (N * (1 - Q) ** k)
            * q_pochhammer(Q**N, Q, k) * q_pochhammer(Q ** (N + alpha), Q, k)
            / q_pochhammer(Q, Q, k))
    return pref * ph


def m_ql_hooksum(k: int, N: int, alpha: int, q: Fraction) -> Fraction:
    """k-th moment as the explicit alternating sum over hook column lengths."""
    q = _validate(k, N, alpha, q)
    Q = q * q
    tot = Fraction(0)
    for l in range(k):
        term = (Fraction(-1) ** l
                * q ** (k * (2 - 2 * N - alpha) + l * (l + 1))
                * q_pochhammer(Q ** (N - l), Q, k)
                * q_pochhammer(Q ** (N + alpha - l), Q, k))
        term /= (N * (1 - Q) ** k * (1 - Q**k)
                 * q_pochhammer(Q, Q, l) * q_pochhammer(Q, Q, k - l - 1))
        tot += term
    return tot


def m_ql_schur(k: int, N: int, alpha: int, q: Fraction) -> Fraction:
    """k-th moment through Schur-polynomial expectations on hook shapes.

    (1/N) sum_l (-1)^l E[s_{(k-l,1^l)}] -- a genuinely independent code
    path through the generic hook/content machinery.
    """
    q = _validate(k, N, alpha, q)
    tot = Fraction(0)
    for l in range(k):
        lam = hook_partition(k, l)
        tot += hook_character(k, l) * schur_expectation_qlag(lam, N, alpha, q)
    return tot / N


def m_ql_randomized_hyper(k: int, z: Fraction, alpha: int, q: Fraction,
                          policy: TruncationPolicy | None = None) -> ApproxValue:
    """Randomized moment sum_N N M_alpha(k,N) z^{N-1}(1-z)^2 as the
    non-terminating 2phi1 closed form, truncated with a certified bound.

    [k+a]_{q^2}!/[a]_{q^2}! (z;q^{-2})_k q^{-ak} (1-z)
      * 2phi1(q^{2k+2}, q^{2k+2+2a}; q^{2a+2}; q^2, z q^{-2k}).
    Absolute convergence needs 0 <= z < q^{2k}; z = 0 returns M_alpha(k,1).
    """
    if k < 1:
        raise InvalidOrder("k must be >= 1")
    if alpha < 0:
        raise ValueError("alpha must be a nonnegative integer")
    z = to_rational(z)
    q = require_base(q)
    Q = q * q
    if not (0 <= z < Q**k):
        raise Divergent("the 2phi1 argument z q^{-2k} must lie in [0, 1)")
    policy = policy or default_policy()
    pref = Fraction(1)
    for i in range(1, k + 1):  # [k+alpha]_{q^2}! / [alpha]_{q^2}!
        pref *= (1 - Q ** (alpha + i)) / (1 - Q)
    pref *= q_pochhammer(z, q**-2, k) * q ** (-alpha * k) * (1 - z)
    ph = phi_truncated([Q ** (k + 1), Q ** (k + 1 + alpha)], [Q ** (alpha + 1)],
                       Q, z * Q**-k, policy)
    return ph.scale(pref)


def m_ql_randomized_bigqjacobi(k: int, z: Fraction, alpha: int,
                               q: Fraction) -> Fraction:
    """Randomized moment as a Big q-Jacobi polynomial value, exact.

    [k+a]_{q^2}!/[a]_{q^2}! ((z;q^{-2})_k/(zq^2;q^2)_k) q^{-ak}
      * B_k(0; q^{2a}, q^{-2a}, z^{-1}; q^2).
    """
    if k < 0:
        raise InvalidOrder("k must be >= 0")
    if alpha < 0:
        raise ValueError("alpha must be a nonnegative integer")
    z = to_rational(z)
    q = require_base(q)
    if z == 0:
        raise ZeroDenominator("z = 0 is outside the Big q-Jacobi parameterization")
    Q = q * q
    den = q_pochhammer(z * Q, Q, k)
    if den == 0:
        raise ZeroDenominator("z q^{2j} = 1 zeroes a prefactor denominator")
    pref = Fraction(1)
    for i in range(1, k + 1):
        pref *= (1 - Q ** (alpha + i)) / (1 - Q)
    pref *= q_pochhammer(z, q**-2, k) / den * q ** (-alpha * k)
    ph = phi_terminating([Q**-k, Q ** (k + 1), Fraction(0)],
                         [Q ** (alpha + 1), Q / z], Q, Q)
    return pref * ph


def _bigqjacobi_rec_ab(n: int, a: Fraction, b: Fraction, c: Fraction, Q: Fraction):
    a_n = ((1 - a * Q ** (n + 1)) * (1 - a * b * Q ** (n + 1)) * (1 - c * Q ** (n + 1))
           / ((1 - a * b * Q ** (2 * n + 1)) * (1 - a * b * Q ** (2 * n + 2))))
    c_n = (-a * c * Q ** (n + 1) * (1 - Q**n) * (1 - a * b / c * Q**n) * (1 - b * Q**n)
           / ((1 - a * b * Q ** (2 * n)) * (1 - a * b * Q ** (2 * n + 1))))
    return a_n, c_n


def _rand_prefactor(k: int, z: Fraction, alpha: int, q: Fraction) -> Fraction:
    Q = q * q
    g = Fraction(1)
    for i in range(1, k + 1):
        g *= (1 - Q ** (alpha + i)) / (1 - Q)
    return g * q_pochhammer(z, q**-2, k) / q_pochhammer(z * Q, Q, k) * q ** (-alpha * k)


def bigqjacobi_recurrence_coeffs(k: int, z: Fraction, alpha: int, q: Fraction):
    """Coefficients (A_k, D_k, C_k) with A_k M_{k+1} + D_k M_k - C_k M_{k-1} = 0
    for the randomized moments, from the Big q-Jacobi recurrence
    a_n B_{n+1} - (a_n + c_n + (x-1)) B_n + c_n B_{n-1} = 0 at x = 0,
    conjugated with the exact prefactor ratios (M_0 = 1)."""
    z = to_rational(z)
    q = require_base(q)
    Q = q * q
    a_par, b_par, c_par = Q**alpha, Q**-alpha, 1 / z
    a_k, c_k = _bigqjacobi_rec_ab(k, a_par, b_par, c_par, Q)
    g_prev, g_mid, g_next = (_rand_prefactor(j, z, alpha, q) for j in (k - 1, k, k + 1))
    A = a_k * g_mid / g_next
    D = -(a_k + c_k - 1)
    C = -c_k * g_mid / g_prev
    return A, D, C


def bigqjacobi_recurrence_residual(k: int, z: Fraction, alpha: int,
                                   q: Fraction) -> Fraction:
    """A_k M_{k+1} + D_k M_k - C_k M_{k-1}, exact; identically zero.

    M_{k-1}, M_k, M_{k+1} must all be defined at (z, alpha, q); the points
    z = q^{2i}, i <= k, are poles of the Big q-Jacobi parameterization
    (ZeroDenominator), matching the series-convergence boundary.
    """
    if k < 1:
        raise InvalidOrder("k must be >= 1")
    z = to_rational(z)
    q = require_base(q)
    if any(_rand_prefactor(j, z, alpha, q) == 0 for j in (k - 1, k + 1)):
        raise ZeroDenominator(
            "z = q^{2i} with i <= k is a pole of the randomized-moment family")
    A, D, C = bigqjacobi_recurrence_coeffs(k, z, alpha, q)
    m_prev = (Fraction(1) if k == 1
              else m_ql_randomized_bigqjacobi(k - 1, z, alpha, q))
    m_mid = m_ql_randomized_bigqjacobi(k, z, alpha, q)
    m_next = m_ql_randomized_bigqjacobi(k + 1, z, alpha, q)
    return A * m_next + D * m_mid - C * m_prev


def randomized_series_residual(k: int, z: Fraction, alpha: int, q: Fraction,
                               n_max: int) -> ApproxValue:
    """|partial defining series - exact Big q-Jacobi value| with the
    geometric bound on the dropped tail; requires 0 < z < q^{2k}."""
    if k < 1:
        raise InvalidOrder("k must be >= 1")
    z = to_rational(z)
    q = require_base(q)
    Q = q * q
    if z == 0:
        return ApproxValue.exact(0)
    if not (0 < z < Q**k):
        raise Divergent("series converges only for 0 < z < q^{2k}")
    s = Fraction(0)
    for N in range(1, n_max + 1):
        s += N * m_ql_hyper(k, N, alpha, q) * z ** (N - 1) * (1 - z) ** 2
    # |N M_alpha(k,N)| <= C q^{-2Nk} with C from the hook sum's l-terms
    C = Fraction(0)
    for l in range(k):
        C += (q ** (k * (2 - alpha) + l * (l + 1))
              / ((1 - Q) ** k * (1 - Q**k)
                 * q_pochhammer(Q, Q, l) * q_pochhammer(Q, Q, k - l - 1)))
    rho = z * q ** (-2 * k)
    tail = (1 - z) ** 2 * C * q ** (-2 * k) * rho**n_max / (1 - rho)
    exact = m_ql_randomized_bigqjacobi(k, z, alpha, q)
    return ApproxValue(abs(s - exact), tail)
