"""q-derivative, Jackson integrals and certified truncation machinery.

All oracle arithmetic stays rational: a truncated sum is returned as an
ApproxValue carrying the exact partial sum together with an exact
rational bound on the dropped tail, so oracle-vs-formula comparisons are
reproducible bit for bit. No binary floating point anywhere.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import TailNotBounded, ZeroPoint
from .qarith import require_base, to_rational

DEFAULT_TOLERANCE = Fraction(1, 10**30)
DEFAULT_MAX_INDEX = 4096


@dataclass(frozen=True)
class TruncationPolicy:
    tolerance: Fraction = DEFAULT_TOLERANCE
    max_index: int = DEFAULT_MAX_INDEX

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_index < 1:
            raise ValueError("max_index must be a positive integer")


def default_policy() -> TruncationPolicy:
    """Default policy; QMOMENTS_MAX_TERMS overrides the truncation cap."""
    env = os.environ.get("QMOMENTS_MAX_TERMS")
    if env:
        return TruncationPolicy(max_index=int(env))
    return TruncationPolicy()


@dataclass(frozen=True)
class ApproxValue:
    """An exact rational value plus a certified absolute error bound.

    The true quantity lies in [value - bound, value + bound]. Downstream
    comparisons must use the bound, never a global epsilon.
    """

    value: Fraction
    bound: Fraction

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("certified bound must be nonnegative")

    @classmethod
    def exact(cls, v) -> "ApproxValue":
        return cls(to_rational(v), Fraction(0))

    @property
    def lo(self) -> Fraction:
        return self.value - self.bound

    @property
    def hi(self) -> Fraction:
        return self.value + self.bound

    def contains(self, x) -> bool:
        x = to_rational(x)
        return self.lo <= x <= self.hi

    def __add__(self, other: "ApproxValue") -> "ApproxValue":
        return ApproxValue(self.value + other.value, self.bound + other.bound)

    def __sub__(self, other: "ApproxValue") -> "ApproxValue":
        return ApproxValue(self.value - other.value, self.bound + other.bound)

    def __mul__(self, other: "ApproxValue") -> "ApproxValue":
        b = (
            abs(self.value) * other.bound
            + abs(other.value) * self.bound
            + self.bound * other.bound
        )
        return ApproxValue(self.value * other.value, b)

    def __truediv__(self, other: "ApproxValue") -> "ApproxValue":
        if abs(other.value) <= other.bound:
            raise ZeroDivisionError("divisor interval contains zero")
        num = abs(self.value) * other.bound + abs(other.value) * self.bound
        den = abs(other.value) * (abs(other.value) - other.bound)
        return ApproxValue(self.value / other.value, num / den)

    def scale(self, c) -> "ApproxValue":
        c = to_rational(c)
        return ApproxValue(c * self.value, abs(c) * self.bound)

    def __neg__(self) -> "ApproxValue":
        return ApproxValue(-self.value, self.bound)


def q_derivative(f, x: Fraction, q: Fraction) -> Fraction:
    """(f(x) - f(qx)) / (x - qx); exact whenever f is exact."""
    x = to_rational(x)
    q = require_base(q)
    if x == 0:
        raise ZeroPoint("q-derivative is undefined at x = 0")
    return (f(x) - f(q * x)) / (x - q * x)


def jackson_integral_0a(f, a: Fraction, q: Fraction,
                        policy: TruncationPolicy | None = None,
                        envelope=None) -> ApproxValue:
    """Jackson integral over [0, a]: sum_{n>=0} (1-q) a q^n f(a q^n).

    `envelope(x)` must bound |f| on the atoms in (0, x]; without one the
    tail cannot be certified.
    """
    a = to_rational(a)
    q = require_base(q)
    if a <= 0:
        raise ValueError("upper limit a must be positive")
    policy = policy or default_policy()
    if envelope is None:
        raise TailNotBounded("jackson_integral_0a needs a decay envelope for |f|")
    s = Fraction(0)
    n = 0
    while True:
        x = a * q**n
        s += (1 - q) * x * f(x)
        # tail over n' > n: sum (1-q) a q^{n'} |f| <= a q^{n+1} * envelope
        tail = a * q ** (n + 1) * to_rational(envelope(a * q ** (n + 1)))
        if tail < 0:
            raise TailNotBounded("envelope returned a negative bound")
        if tail <= policy.tolerance or n + 1 >= policy.max_index:
            return ApproxValue(s, tail)
        n += 1


def jackson_integral_symmetric(f, a: Fraction, q: Fraction,
                               policy: TruncationPolicy | None = None,
                               envelope=None) -> ApproxValue:
    """Jackson integral over [-a, a]: the [0,a] integrals of f(x) and f(-x)."""
    pos = jackson_integral_0a(f, a, q, policy, envelope)
    neg = jackson_integral_0a(lambda x: f(-x), a, q, policy, envelope)
    return pos + neg


def jackson_integral_improper(f, q: Fraction,
                              policy: TruncationPolicy | None = None,
                              envelope_zero=None, envelope_inf=None) -> ApproxValue:
    """Bilateral Jackson integral sum_{n in Z} (1-q) q^n f(q^n).

    envelope_zero(x) bounds |f| on atoms in (0, x]; envelope_inf(x) bounds
    |f(y)|/y on atoms y >= x (so the weighted tail stays summable).
    """
    q = require_base(q)
    policy = policy or default_policy()
    if envelope_zero is None or envelope_inf is None:
        raise TailNotBounded("improper Jackson integral needs envelopes at both ends")

    s = Fraction(0)
    # n >= 0 leg: atoms q^n -> 0
    n = 0
    tail_zero = None
    while True:
        x = q**n
        s += (1 - q) * x * f(x)
        tail_zero = q ** (n + 1) * to_rational(envelope_zero(q ** (n + 1)))
        if tail_zero <= policy.tolerance / 2 or n + 1 >= policy.max_index:
            break
        n += 1

    # n < 0 leg: atoms q^{-m} -> infinity; sum (1-q) q^{-m} f(q^{-m})
    # |(1-q) y f(y)| <= (1-q) y^2 envelope_inf(y); certify via the ratio of
    # consecutive bounds, which is q^{-2} * envelope ratio -- require the
    # envelope itself to decay fast enough that the bound halves per step.
    m = 1
    tail_inf = None
    while True:
        y = q**-m
        s += (1 - q) * y * f(y)
        b_next = (1 - q) * q ** (-m - 1) * to_rational(envelope_inf(q ** (-m - 1))) * q ** (-m - 1)
        b_next2 = (1 - q) * q ** (-m - 2) * to_rational(envelope_inf(q ** (-m - 2))) * q ** (-m - 2)
        if b_next > 0 and not (b_next2 * 2 <= b_next):
            if m >= policy.max_index:
                raise TailNotBounded("infinity-end envelope does not certify decay")
            m += 1
            continue
        tail_inf = 2 * b_next  # geometric with ratio <= 1/2 from here on
        if tail_inf <= policy.tolerance / 2 or m >= policy.max_index:
            break
        m += 1

    return ApproxValue(s, tail_zero + tail_inf)


def infinite_qpoch(a: Fraction, q: Fraction,
                   policy: TruncationPolicy | None = None) -> ApproxValue:
    """(a;q)_infty as a certified value.

    Partial product to index J, with multiplicative tail controlled by
    S = sum_{i>J} |a| q^i <= |a| q^{J+1}/(1-q): the omitted factor lies in
    [1-S, 1/(1-S)], so the absolute bound is |P_J| * S/(1-S).
    """
    a = to_rational(a)
    q = require_base(q)
    policy = policy or default_policy()
    if a == 0:
        return ApproxValue.exact(1)
    p = Fraction(1)
    i = 0
    while True:
        p *= 1 - a * q**i
        if p == 0:
            return ApproxValue.exact(0)
        S = abs(a) * q ** (i + 1) / (1 - q)
        if S < 1:
            err = abs(p) * S / (1 - S)
            if err <= policy.tolerance or i + 1 >= policy.max_index:
                if S >= 1:
                    raise TailNotBounded("tail sum not below 1 at max_index")
                return ApproxValue(p, err)
        elif i + 1 >= policy.max_index:
            raise TailNotBounded("|a| q^max_index too large to bound the tail")
        i += 1
