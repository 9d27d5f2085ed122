"""Classical GUE and LUE moment formulas, recurrences and generating
functions; exact combinatorial targets for the q -> 1 limits.

Q_k(n) is the normalized 2k-th GUE moment, Q_k(n; alpha) the normalized
k-th LUE moment; Q_0 := 1 for both families. All comparisons are
coefficient-wise over exact rationals, never numeric evaluation at a
point.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .ensembles import classical_poly
from .errors import InvalidOrder
from .hyper import classical_F
from .partitions import hook_character, hook_partition, schur_expectation_classical
from .pseries import poly_mul, series_div
from .qarith import to_rational


def double_factorial_odd(k: int) -> int:
    """(2k-1)!! with the empty product at k = 0."""
    out = 1
    for j in range(1, k + 1):
        out *= 2 * j - 1
    return out


def gue_moment(k: int, n: int) -> Fraction:
    """Q_k(n) = (2k-1)!! 2F1(-k, 1-n; 2; 2); a positive integer."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    return double_factorial_odd(k) * classical_F(
        [Fraction(-k), Fraction(1 - n)], [Fraction(2)], 2)


def hz_recurrence_residual(k: int, n: int) -> Fraction:
    """(k+2) Q_{k+1} - 2n(2k+1) Q_k - k(2k+1)(2k-1) Q_{k-1}; zero."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return ((k + 2) * gue_moment(k + 1, n)
            - 2 * n * (2 * k + 1) * gue_moment(k, n)
            - k * (2 * k + 1) * (2 * k - 1) * gue_moment(k - 1, n))


def hz_genfunc_residual(k: int, order: int) -> Fraction:
    """Max |difference| of the first `order` z-coefficients between
    sum_n n Q_k(n) z^n/(2k-1)!! and z(1+z)^{k+1} / ((1-z^2)(1-z)^{k+1}).

    The generating function collects the unnormalized trace moments
    n Q_k(n) (the normalized ones fail already at k = 0)."""
    if k < 0 or order < 1:
        raise ValueError("need k >= 0 and order >= 1")
    num = [Fraction(0), Fraction(1)]
    for _ in range(k + 1):
        num = poly_mul(num, [Fraction(1), Fraction(1)])
    den = [Fraction(1), Fraction(0), Fraction(-1)]
    for _ in range(k + 1):
        den = poly_mul(den, [Fraction(1), Fraction(-1)])
    rhs = series_div(num, den, order)
    dfac = double_factorial_odd(k)
    worst = Fraction(0)
    for n in range(1, order + 1):
        diff = abs(Fraction(n * gue_moment(k, n), dfac) - rhs[n])
        worst = max(worst, diff)
    return worst


def lue_moment(k: int, n: int, alpha: int) -> Fraction:
    """Q_k(n; alpha) = (n+alpha)(k+alpha)!/(1+alpha)! 3F2(1-k, 2+k, 1-n; 2, 2+alpha; 1)."""
    if k < 1:
        raise InvalidOrder("k must be >= 1 (Q_0 := 1)")
    if n < 1 or alpha < 0:
        raise ValueError("need n >= 1 and alpha >= 0")
    pref = Fraction((n + alpha) * factorial(k + alpha), factorial(1 + alpha))
    return pref * classical_F(
        [Fraction(1 - k), Fraction(2 + k), Fraction(1 - n)],
        [Fraction(2), Fraction(2 + alpha)], 1)


def lue_moment_or_one(k: int, n: int, alpha: int) -> Fraction:
    return Fraction(1) if k == 0 else lue_moment(k, n, alpha)


def ht_recurrence_residual(k: int, n: int, alpha: int) -> Fraction:
    """(k+2) Q_{k+1} - (2k+1)(2n+alpha) Q_k - (k-1)(k^2-alpha^2) Q_{k-1}; zero."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return ((k + 2) * lue_moment(k + 1, n, alpha)
            - (2 * k + 1) * (2 * n + alpha) * lue_moment(k, n, alpha)
            - (k - 1) * (k * k - alpha * alpha) * lue_moment_or_one(k - 1, n, alpha))


def lue_moment_schur(k: int, n: int, alpha: int) -> Fraction:
    """Q_k(n; alpha) through hook characters and Schur expectations."""
    if k < 1:
        raise InvalidOrder("k must be >= 1")
    tot = Fraction(0)
    for l in range(k):
        lam = hook_partition(k, l)
        tot += hook_character(k, l) * schur_expectation_classical(lam, n, alpha)
    return tot / n


def hahn_representation_residuals(k: int, n: int, alpha: int):
    """Differences between the 3F2 moment and its dual Hahn / Hahn
    polynomial evaluations; expected (0, 0)."""
    if k < 1 or n < 1 or alpha < 0:
        raise ValueError("need k >= 1, n >= 1, alpha >= 0")
    base = lue_moment(k, n, alpha)
    pref = Fraction((n + alpha) * factorial(k + alpha), factorial(1 + alpha))
    dual = pref * classical_poly("dual_hahn", n - 1, (k - 1) * (k + 2),
                                 (1, 1, -2 - alpha))
    hahn = pref * classical_poly("hahn", k - 1, n - 1, (1, 1, -2 - alpha))
    return base - dual, base - hahn


def lue_randomized_residual(k: int, alpha: int, n_max: int) -> Fraction:
    """Coefficient-wise residual of the randomized LUE identity:
    sum_n Q_k(n;alpha) n (1-z)^2 z^{n-1}
      = (k+alpha)!/alpha! (1-z)^{k+1} 2F1(1+k, 1+k+alpha; 1+alpha; z).
    Exact expansion to order n_max; returns the max |difference|."""
    if k < 1 or alpha < 0 or n_max < 1:
        raise ValueError("need k >= 1, alpha >= 0, n_max >= 1")
    order = n_max - 1
    # LHS coefficients of z^m: sum over n with (1-z)^2 = 1 - 2z + z^2
    lhs = []
    for m in range(order + 1):
        c = Fraction(m + 1) * lue_moment(k, m + 1, alpha)
        if m >= 1:
            c -= 2 * Fraction(m) * lue_moment(k, m, alpha)
        if m >= 2:
            c += Fraction(m - 1) * lue_moment(k, m - 1, alpha)
        lhs.append(c)
    # RHS: (1-z)^{k+1} polynomial times the 2F1 series
    binom = [Fraction(1)]
    for _ in range(k + 1):
        binom = poly_mul(binom, [Fraction(1), Fraction(-1)])
    f21 = [Fraction(1)]
    for j in range(order):
        f21.append(f21[-1] * Fraction((1 + k + j) * (1 + k + alpha + j),
                                      (1 + alpha + j) * (j + 1)))
    pref = Fraction(factorial(k + alpha), factorial(alpha))
    worst = Fraction(0)
    for m in range(order + 1):
        rhs = pref * sum(binom[i] * f21[m - i]
                         for i in range(min(m, len(binom) - 1) + 1))
        worst = max(worst, abs(lhs[m] - rhs))
    return worst


def gue_randomized_residual(k: int, n_max: int) -> Fraction:
    """Coefficient-wise residual of
    sum_n Q_k(n) n (1-z)^2 z^{n-1} = (2k-1)!! ((1+z)/(1-z))^k."""
    if k < 0 or n_max < 1:
        raise ValueError("need k >= 0 and n_max >= 1")
    order = n_max - 1
    lhs = []
    for m in range(order + 1):
        c = Fraction(m + 1) * gue_moment(k, m + 1)
        if m >= 1:
            c -= 2 * Fraction(m) * gue_moment(k, m)
        if m >= 2:
            c += Fraction(m - 1) * gue_moment(k, m - 1)
        lhs.append(c)
    num = [Fraction(1)]
    for _ in range(k):
        num = poly_mul(num, [Fraction(1), Fraction(1)])
    den = [Fraction(1)]
    for _ in range(k):
        den = poly_mul(den, [Fraction(1), Fraction(-1)])
    rhs = series_div(num, den, order)
    dfac = double_factorial_odd(k)
    worst = Fraction(0)
    for m in range(order + 1):
        worst = max(worst, abs(lhs[m] - dfac * rhs[m]))
    return worst


def classical_target(family: str, k: int, n: int, alpha: int = 0) -> Fraction:
    """The q -> 1 target: Q_k(n) for 'gue', Q_k(n; alpha) for 'lue'."""
    if family == "gue":
        return gue_moment(k, n)
    if family == "lue":
        return lue_moment_or_one(k, n, alpha)
    raise ValueError(f"unknown classical family {family!r}")
