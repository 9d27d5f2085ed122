"""Discrete reference measures, orthonormal polynomial families, and the
Jackson-sum one-point moment oracle.

Coordinates: both ensembles live on geometric ladders rescaled by an
irrational nu = 1/sqrt(1-Q). No square root is ever materialized: all
work happens in the rescaled coordinate t = x/nu (q-Gaussian) or
x = nu^2 * t (q-Laguerre), with nu^2 = 1/(1-Q) held as an exact rational
and only even powers / squared polynomials crossing module boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeOutOfRange, FormMismatch, ZeroDenominator, ZeroPoint
from .hyper import classical_F, phi_terminating
from .qarith import (q_pochhammer, q_pochhammer_bilateral, require_base,
                     to_rational)
from .qcalc import ApproxValue, TruncationPolicy, default_policy, infinite_qpoch


# ---------------------------------------------------------------------------
# polynomial families (exact values at rational points)
# ---------------------------------------------------------------------------

def monic_q_hermite(n: int, t: Fraction, Q: Fraction) -> Fraction:
    """Monic discrete q-Hermite I via the three-term recurrence (base Q).

    p_0 = 1, p_1 = t, p_{m+1} = t p_m - Q^{m-1}(1 - Q^m) p_{m-1}.
    """
    t = to_rational(t)
    Q = require_base(Q)
    if n == 0:
        return Fraction(1)
    prev, cur = Fraction(1), t
    for m in range(1, n):
        prev, cur = cur, t * cur - Q ** (m - 1) * (1 - Q**m) * prev
    return cur


def q_hermite_norm_sq(n: int, Q: Fraction) -> Fraction:
    """Squared norm of the monic family against the mass-1 reference measure."""
    return Q ** (n * (n - 1) // 2) * q_pochhammer(Q, Q, n)


def q_hermite_sq(n: int, t: Fraction, q: Fraction) -> Fraction:
    """Square of the n-th orthonormal rescaled q-Hermite polynomial at t = x/nu.

    Evaluated through the terminating 2phi1 form (base q^2) whose second
    parameter is 1/t, then squared; the normalization enters only squared,
    so the value is exactly rational.
    """
    t = to_rational(t)
    q = require_base(q)
    if t == 0:
        raise ZeroPoint("the 2phi1 parameter form needs t != 0 (atoms never sit at 0)")
    Q = q * q
    if n == 0:
        return Fraction(1)
    v = phi_terminating([Q**-n, 1 / t], [Fraction(0)], Q, -Q * t)
    return q ** (n * (n - 1)) * v * v / q_pochhammer(Q, Q, n)


def _q_laguerre_phi_forms(n: int, x: Fraction, alpha: int, base: Fraction):
    """The 2phi1-with-zero-lower and 1phi1 displays; they must agree exactly."""
    Q = base
    f1 = phi_terminating([Q**-n, -x], [Fraction(0)], Q, Q ** (n + alpha + 1))
    f2 = phi_terminating([Q**-n], [Q ** (alpha + 1)], Q, -(Q ** (n + alpha + 1)) * x)
    return f1, f2


def q_laguerre_sq(n: int, x: Fraction, alpha: int, base: Fraction) -> Fraction:
    """Square of the n-th normalized q-Laguerre polynomial (given base).

    Both displayed series forms are evaluated and compared exactly before
    squaring; a disagreement is an implementation fault, never silent.
    """
    if alpha < 0:
        raise ValueError("alpha must be a nonnegative integer")
    x = to_rational(x)
    Q = require_base(base)
    f1, f2 = _q_laguerre_phi_forms(n, x, alpha, Q)
    if f1 != q_pochhammer(Q ** (alpha + 1), Q, n) * f2:
        raise FormMismatch(f"q-Laguerre displays disagree at n={n}, x={x}")
    return (q_pochhammer(Q ** (alpha + 1), Q, n) * Q**n
            / q_pochhammer(Q, Q, n)) * f2 * f2


def q_laguerre_sq_fast(n: int, x: Fraction, alpha: int, base: Fraction) -> Fraction:
    """Single-form q_laguerre_sq (1phi1 route) for inner oracle loops."""
    Q = base
    f2 = phi_terminating([Q**-n], [Q ** (alpha + 1)], Q, -(Q ** (n + alpha + 1)) * x)
    return (q_pochhammer(Q ** (alpha + 1), Q, n) * Q**n
            / q_pochhammer(Q, Q, n)) * f2 * f2


def wall_poly(n: int, t: Fraction, a: Fraction, Q: Fraction) -> Fraction:
    """Little q-Laguerre (Wall) polynomial 2phi1(Q^-n, 0; aQ; Q, Q t)."""
    return phi_terminating([Q**-n, Fraction(0)], [a * Q], Q, Q * to_rational(t))


def wall_norm_sq(n: int, a: Fraction, Q: Fraction) -> Fraction:
    """Squared norm of wall_poly against the mass-1 unilateral measure."""
    return (a * Q) ** n * q_pochhammer(Q, Q, n) / q_pochhammer(a * Q, Q, n)


def q_hahn(k: int, x: Fraction, alpha: Fraction, beta: Fraction, K: int,
           q: Fraction) -> Fraction:
    """q-Hahn polynomial Q_k(x; alpha, beta, K | q), x the q^{-j} value."""
    if not (0 <= k <= K):
        raise DegreeOutOfRange(f"q-Hahn degree must satisfy 0 <= k <= K, got k={k}, K={K}")
    alpha, beta, x = map(to_rational, (alpha, beta, x))
    q = require_base(q)
    return phi_terminating([q**-k, alpha * beta * q ** (k + 1), x],
                           [alpha * q, q**-K], q, q)


def big_q_jacobi(n: int, x: Fraction, a: Fraction, b: Fraction, c: Fraction,
                 q: Fraction) -> Fraction:
    """Unnormalized Big q-Jacobi polynomial B_n(x; a, b, c; q)."""
    if n < 0:
        raise DegreeOutOfRange("degree must be nonnegative")
    a, b, c, x = map(to_rational, (a, b, c, x))
    q = require_base(q)
    return phi_terminating([q**-n, a * b * q ** (n + 1), x], [a * q, c * q], q, q)


def _rational_sqrt(v: Fraction) -> Fraction:
    if v < 0:
        raise ValueError("negative discriminant")
    rn = math.isqrt(v.numerator)
    rd = math.isqrt(v.denominator)
    if rn * rn != v.numerator or rd * rd != v.denominator:
        raise ValueError(f"{v} is not the square of a rational")
    return Fraction(rn, rd)


def classical_poly(family: str, degree: int, point: Fraction, params=()) -> Fraction:
    """Exact values of the classical families used by the moment checks.

    hermite: the polynomial part x^n 2F0(-n/2,(1-n)/2; -; -2/x^2), expanded
    so x = 0 is fine (the 1/sqrt(n!) normalization enters only squared).
    laguerre(alpha): (alpha+1)_n 1F1(-n; alpha+1; -x), same convention.
    hahn(a, b, Nparam): 3F2 at the point x.
    dual_hahn(g, d, Nparam): point is the lambda-value x(x+g+d+1).
    """
    point = to_rational(point)
    if degree < 0:
        raise DegreeOutOfRange("degree must be nonnegative")
    if family == "hermite":
        # x^n sum_i (-n/2)_i ((1-n)/2)_i (-2)^i x^{-2i} / i!, expanded termwise
        total = Fraction(0)
        term = Fraction(1)
        a1, a2 = Fraction(-degree, 2), Fraction(1 - degree, 2)
        for i in range(degree // 2 + 1):
            total += term * point ** (degree - 2 * i)
            term *= (a1 + i) * (a2 + i) * Fraction(-2) / (i + 1)
        return total
    if family == "laguerre":
        (alpha,) = params
        pref = Fraction(1)
        for i in range(degree):
            pref *= alpha + 1 + i
        return pref * classical_F([Fraction(-degree)], [Fraction(alpha + 1)], -point)
    if family == "hahn":
        a, b, npar = map(to_rational, params)
        return classical_F([Fraction(-degree), degree + a + b + 1, -point],
                           [a + 1, -npar], 1)
    if family == "dual_hahn":
        g, d, npar = map(to_rational, params)
        s = g + d + 1
        x = (-s + _rational_sqrt(s * s + 4 * point)) / 2
        return classical_F([Fraction(-degree), -x, x + s], [g + 1, -npar], 1)
    raise ValueError(f"unknown classical family {family!r}")


# ---------------------------------------------------------------------------
# reference measures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaussianQMeasure:
    """Symmetric measure on t = +-Q^j (true coordinate x = nu*t, nu^2 rational).

    Weight at each of +-Q^j is Q^j / ((Q;Q)_j (-Q;Q)_j (-1;Q)_inf); the
    normalization makes the total mass exactly 1. nu_convention 'base'
    sets nu^2 = 1/(1-Q) with Q = q^2 (default); 'paper-q' sets 1/(1-q).
    """

    q: Fraction
    nu_convention: str = "base"

    def __post_init__(self):
        require_base(self.q)
        if self.nu_convention not in ("base", "paper-q"):
            raise ValueError("nu_convention must be 'base' or 'paper-q'")

    @property
    def base(self) -> Fraction:
        return self.q * self.q

    @property
    def nu2(self) -> Fraction:
        if self.nu_convention == "base":
            return 1 / (1 - self.base)
        return 1 / (1 - self.q)

    def atom(self, j: int) -> Fraction:
        """Rescaled coordinate of the ladder rung j >= 0 (each sign)."""
        return self.base**j

    def weight_unnormalized(self, j: int) -> Fraction:
        Q = self.base
        return Q**j / (q_pochhammer(Q, Q, j) * q_pochhammer(-Q, Q, j))

    def normalizer(self, policy: TruncationPolicy | None = None) -> ApproxValue:
        return infinite_qpoch(Fraction(-1), self.base, policy)

    def weight(self, j: int, policy: TruncationPolicy | None = None) -> ApproxValue:
        """Normalized weight at each of +-Q^j."""
        return ApproxValue.exact(self.weight_unnormalized(j)) / self.normalizer(policy)

    def density_sq(self, n: int, t: Fraction) -> Fraction:
        """Orthonormal-polynomial square via the monic recurrence (fast route)."""
        p = monic_q_hermite(n, t, self.base)
        return p * p / q_hermite_norm_sq(n, self.base)

    def density_bound(self, n: int) -> Fraction:
        """Bound on density_sq over |t| <= 1 (recurrence with |t| = 1, + signs)."""
        Q = self.base
        prev, cur = Fraction(1), Fraction(1)
        for m in range(1, n):
            prev, cur = cur, cur + Q ** (m - 1) * (1 - Q**m) * prev
        b = cur if n > 0 else Fraction(1)
        return b * b / q_hermite_norm_sq(n, Q)


@dataclass(frozen=True)
class LaguerreQMeasure:
    """q-Laguerre-type measure on x = nu^2 * Q^j with nu^2 = 1/(1-Q), Q = q^2.

    ladder='bilateral' (j in Z) with weights Q^{j(alpha+1)} (-Q;Q)_{j-1}
    (weights='orthogonal', the convention under which the displayed
    normalized q-Laguerre polynomials are orthonormal) or (-Q;Q)_j
    (weights='display'); ladder='unilateral' (j >= 0) carries weights
    Q^{j(alpha+1)}/(Q;Q)_j, whose orthonormal family is the Wall family.
    """

    q: Fraction
    alpha: int
    ladder: str = "bilateral"
    weights: str = "orthogonal"

    def __post_init__(self):
        require_base(self.q)
        if self.alpha < 0:
            raise ValueError("alpha must be a nonnegative integer")
        if self.ladder not in ("bilateral", "unilateral"):
            raise ValueError("ladder must be 'bilateral' or 'unilateral'")
        if self.weights not in ("orthogonal", "display"):
            raise ValueError("weights must be 'orthogonal' or 'display'")

    @property
    def base(self) -> Fraction:
        return self.q * self.q

    @property
    def nu2(self) -> Fraction:
        return 1 / (1 - self.base)

    def atom(self, j: int) -> Fraction:
        return self.base**j

    def weight_unnormalized(self, j: int) -> Fraction:
        Q = self.base
        if self.ladder == "unilateral":
            if j < 0:
                raise ValueError("unilateral ladder has rungs j >= 0")
            return Q ** (j * (self.alpha + 1)) / q_pochhammer(Q, Q, j)
        shift = j - 1 if self.weights == "orthogonal" else j
        return Q ** (j * (self.alpha + 1)) * q_pochhammer_bilateral(-Q, Q, shift)

    def weight_ratio(self, j: int) -> Fraction:
        """w(Q^{j+1})/w(Q^j), exact for every rung."""
        Q = self.base
        if self.ladder == "unilateral":
            return Q ** (self.alpha + 1) / (1 - Q ** (j + 1))
        if self.weights == "orthogonal":
            return Q ** (self.alpha + 1) * (1 + Q**j)
        return Q ** (self.alpha + 1) * (1 + Q ** (j + 1))

    def normalizer(self, policy: TruncationPolicy | None = None) -> ApproxValue:
        """Total unnormalized mass, through certified infinite products."""
        Q = self.base
        a = self.alpha
        policy = policy or default_policy()
        if self.ladder == "unilateral":
            # Euler: sum Q^{j(a+1)}/(Q;Q)_j = 1/(Q^{a+1};Q)_inf
            return ApproxValue.exact(1) / infinite_qpoch(Q ** (a + 1), Q, policy)
        if self.weights == "orthogonal":
            # (1/2) (-Q^{a+1};Q)inf (-Q^{-a};Q)inf (Q;Q)inf / ((Q^{a+1};Q)inf (-Q;Q)inf)
            num = (infinite_qpoch(-(Q ** (a + 1)), Q, policy)
                   * infinite_qpoch(-(Q ** (-a)), Q, policy)
                   * infinite_qpoch(Q, Q, policy))
            den = (infinite_qpoch(Q ** (a + 1), Q, policy)
                   * infinite_qpoch(-Q, Q, policy))
            return (num / den).scale(Fraction(1, 2))
        num = (infinite_qpoch(-(Q ** (a + 2)), Q, policy)
               * infinite_qpoch(-(Q ** (-a - 1)), Q, policy)
               * infinite_qpoch(Q, Q, policy))
        den = (infinite_qpoch(Q ** (a + 1), Q, policy)
               * infinite_qpoch(Fraction(-1), Q, policy))
        return num / den

    def weight(self, j: int, policy: TruncationPolicy | None = None) -> ApproxValue:
        return ApproxValue.exact(self.weight_unnormalized(j)) / self.normalizer(policy)

    def density_sq(self, n: int, t: Fraction) -> Fraction:
        Q = self.base
        if self.ladder == "unilateral":
            p = wall_poly(n, t, Q**self.alpha, Q)
            return p * p / wall_norm_sq(n, Q**self.alpha, Q)
        return q_laguerre_sq_fast(n, t, self.alpha, Q)

    def _abs_coeff_sum(self, n: int) -> Fraction:
        """Sum of |series coefficients| of the degree-n family member."""
        Q = self.base
        a = self.alpha
        tot = Fraction(0)
        term = Fraction(1)
        for i in range(n + 1):
            tot += abs(term)
            if i == n:
                break
            if self.ladder == "unilateral":
                term *= ((1 - Q ** (i - n)) * Q
                         / ((1 - Q ** (a + 1 + i)) * (1 - Q ** (i + 1))))
            else:
                term *= ((1 - Q ** (i - n)) * (-(Q ** (n + a + 1))) * (-1) * Q**i
                         / ((1 - Q ** (a + 1 + i)) * (1 - Q ** (i + 1))))
        return tot

    def _norm_sq(self, n: int) -> Fraction:
        Q = self.base
        if self.ladder == "unilateral":
            return wall_norm_sq(n, Q**self.alpha, Q)
        # display normalization already folded into q_laguerre_sq_fast
        return Fraction(1)

    def density_bound(self, n: int) -> Fraction:
        """Bound on density_sq over 0 < t <= 1."""
        A = self._abs_coeff_sum(n)
        if self.ladder == "unilateral":
            return A * A / self._norm_sq(n)
        Q = self.base
        pref = (q_pochhammer(Q ** (self.alpha + 1), Q, n) * Q**n
                / q_pochhammer(Q, Q, n))
        return pref * A * A

    def density_growth_bound(self, n: int) -> Fraction:
        """C with density_sq(n, t) <= C * t^{2n} for t >= 1 (bilateral leg)."""
        return self.density_bound(n)


# ---------------------------------------------------------------------------
# one-point moment oracle
# ---------------------------------------------------------------------------

def _gaussian_onepoint_raw(measure: GaussianQMeasure, k2: int, N: int,
                           policy: TruncationPolicy) -> ApproxValue:
    """sum_j 2 u_j t_j^{2m} rho-density, unnormalized, with certified tail."""
    Q = measure.base
    dens_bound = sum(measure.density_bound(n) for n in range(N)) / N
    s = Fraction(0)
    j = 0
    while True:
        t = Q**j
        dens = sum(measure.density_sq(n, t) for n in range(N)) / N
        u = measure.weight_unnormalized(j)
        s += 2 * u * t**k2 * dens
        # u_{j+1}/u_j = Q/(1 - Q^{2j+2}); later steps shrink by at most rho
        u_next = u * Q / (1 - Q ** (2 * j + 2))
        rho = Q**k2 * Q / (1 - Q ** (2 * j + 4))
        if rho < 1:
            tail = 2 * dens_bound * u_next * Q ** (k2 * (j + 1)) / (1 - rho)
            if tail <= policy.tolerance or j + 1 >= policy.max_index:
                return ApproxValue(s, tail)
        j += 1


def _laguerre_positive_leg(measure: LaguerreQMeasure, k: int, N: int,
                           policy: TruncationPolicy) -> ApproxValue:
    Q = measure.base
    dens_bound = sum(measure.density_bound(n) for n in range(N)) / N
    s = Fraction(0)
    j = 0
    while True:
        t = Q**j
        dens = sum(measure.density_sq(n, t) for n in range(N)) / N
        u = measure.weight_unnormalized(j)
        s += u * t**k * dens
        rho = measure.weight_ratio(j + 1) * Q**k
        if rho < 1:
            u_next = u * measure.weight_ratio(j)
            tail = dens_bound * u_next * Q ** (k * (j + 1)) / (1 - rho)
            if tail <= policy.tolerance or j + 1 >= policy.max_index:
                return ApproxValue(s, tail)
        j += 1


def _laguerre_negative_leg(measure: LaguerreQMeasure, k: int, N: int,
                           policy: TruncationPolicy) -> ApproxValue:
    Q = measure.base
    growth = sum(measure.density_growth_bound(n) for n in range(N)) / N
    deg = 2 * (N - 1) + k
    s = Fraction(0)
    m = 1
    while True:
        t = Q**-m
        dens = sum(measure.density_sq(n, t) for n in range(N)) / N
        u = measure.weight_unnormalized(-m)
        s += u * t**k * dens
        # stepping m -> m+1 multiplies the term bound by < Q^{m-alpha-deg}
        # under either weight convention
        rho = Q ** (m - measure.alpha - deg)
        if rho < Fraction(1, 2):
            u_next = measure.weight_unnormalized(-m - 1)
            tail = growth * u_next * Q ** (-deg * (m + 1)) / (1 - rho)
            if tail <= policy.tolerance or m >= policy.max_index:
                return ApproxValue(s, tail)
        m += 1


def onepoint_moment_oracle(measure, k: int, N: int,
                           policy: TruncationPolicy | None = None) -> ApproxValue:
    """k-th moment of the normalized one-point function, by direct summation.

    For the q-Gaussian family, odd k is exactly 0 and even k = 2m returns
    (nu^2)^m times the rescaled-coordinate sum; for the q-Laguerre family
    the true coordinate is nu^2 * t, contributing (nu^2)^k.
    """
    if N < 1:
        raise ValueError("N must be a positive integer")
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    policy = policy or default_policy()
    if isinstance(measure, GaussianQMeasure):
        if k % 2 == 1:
            return ApproxValue.exact(0)
        raw = _gaussian_onepoint_raw(measure, k, N, policy)
        return (raw / measure.normalizer(policy)).scale(measure.nu2 ** (k // 2))
    if isinstance(measure, LaguerreQMeasure):
        pos = _laguerre_positive_leg(measure, k, N, policy)
        if measure.ladder == "bilateral":
            pos = pos + _laguerre_negative_leg(measure, k, N, policy)
        return (pos / measure.normalizer(policy)).scale(measure.nu2**k)
    raise TypeError(f"unknown measure type {type(measure)!r}")


def measure_mass(measure, policy: TruncationPolicy | None = None) -> ApproxValue:
    """Total mass; equals 1 within the certified bound for both families."""
    return onepoint_moment_oracle(measure, 0, 1, policy)


def orthonormality_sum(measure, n: int,
                       policy: TruncationPolicy | None = None) -> ApproxValue:
    """sum_atoms p_n(t)^2 w(t); equals 1 within bound for the orthonormal family."""
    policy = policy or default_policy()
    if isinstance(measure, GaussianQMeasure):
        Q = measure.base
        dens_bound = measure.density_bound(n)
        s = Fraction(0)
        j = 0
        while True:
            u = measure.weight_unnormalized(j)
            s += 2 * u * measure.density_sq(n, Q**j)
            u_next = u * Q / (1 - Q ** (2 * j + 2))
            rho = Q / (1 - Q ** (2 * j + 4))
            if rho < 1:
                tail = 2 * dens_bound * u_next / (1 - rho)
                if tail <= policy.tolerance or j + 1 >= policy.max_index:
                    return ApproxValue(s, tail) / measure.normalizer(policy)
            j += 1
    if isinstance(measure, LaguerreQMeasure):
        pos = _laguerre_positive_leg_single(measure, n, policy)
        if measure.ladder == "bilateral":
            pos = pos + _laguerre_negative_leg_single(measure, n, policy)
        return pos / measure.normalizer(policy)
    raise TypeError(f"unknown measure type {type(measure)!r}")


def _laguerre_positive_leg_single(measure, n, policy):
    Q = measure.base
    dens_bound = measure.density_bound(n)
    s = Fraction(0)
    j = 0
    while True:
        u = measure.weight_unnormalized(j)
        s += u * measure.density_sq(n, Q**j)
        rho = measure.weight_ratio(j + 1)
        if rho < 1:
            tail = dens_bound * u * measure.weight_ratio(j) / (1 - rho)
            if tail <= policy.tolerance or j + 1 >= policy.max_index:
                return ApproxValue(s, tail)
        j += 1


def _laguerre_negative_leg_single(measure, n, policy):
    Q = measure.base
    growth = measure.density_growth_bound(n)
    deg = 2 * n
    s = Fraction(0)
    m = 1
    while True:
        u = measure.weight_unnormalized(-m)
        s += u * measure.density_sq(n, Q**-m)
        rho = Q ** (m - measure.alpha - deg)
        if rho < Fraction(1, 2):
            u_next = measure.weight_unnormalized(-m - 1)
            tail = growth * u_next * Q ** (-deg * (m + 1)) / (1 - rho)
            if tail <= policy.tolerance or m >= policy.max_index:
                return ApproxValue(s, tail)
        m += 1


def fit_q_power(exact_value: Fraction, oracle: ApproxValue, q: Fraction,
                search: int = 400):
    """The unique integer e with exact_value / q^e inside the oracle interval.

    Returns None when no exponent in [-search, search] matches (or the
    match is ambiguous, which a tight oracle bound precludes).
    """
    if exact_value == 0 or oracle.value == 0:
        return None
    found = None
    for e in range(-search, search + 1):
        if oracle.contains(exact_value / q**e):
            if found is not None:
                return None
            found = e
    return found
