"""Exact rational arithmetic and the elementary q-symbols.

Everything is built on fractions.Fraction, which stores values in lowest
terms with a positive denominator, so every result here is exact. All
other modules consume these primitives.
"""

import sys
from fractions import Fraction

Rational = Fraction


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and 'num/den' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(s: str) -> Fraction:
    """Parse the wire format 'num/den' (or a bare integer string)."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(x: Fraction) -> str:
    """Serialize as 'num/den' ('n/1' collapses to 'n').

    Exact residuals can carry numerators far beyond Python's default
    int-to-str conversion guard; raise the guard as needed."""
    x = Fraction(x)
    digits = max(x.numerator.bit_length(), x.denominator.bit_length()) // 3 + 12
    if digits > sys.get_int_max_str_digits() > 0:
        sys.set_int_max_str_digits(digits)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def require_base(q: Fraction) -> Fraction:
    """Validate 0 < q < 1 strictly."""
    q = to_rational(q)
    if not (0 < q < 1):
        raise ValueError(f"base q must satisfy 0 < q < 1, got {q}")
    return q


def q_integer(n: int, q: Fraction) -> Fraction:
    """[n]_q = (1 - q^n)/(1 - q)."""
    if n < 0:
        raise ValueError("n must be a nonnegative integer")
    q = require_base(q)
    return (1 - q**n) / (1 - q)


def q_factorial(n: int, q: Fraction) -> Fraction:
    """[n]_q! = prod_{i=1..n} [i]_q."""
    if n < 0:
        raise ValueError("n must be a nonnegative integer")
    q = require_base(q)
    p = Fraction(1)
    for i in range(1, n + 1):
        p *= (1 - q**i) / (1 - q)
    return p


def q_double_factorial_odd(k: int, q: Fraction) -> Fraction:
    """Odd q-double factorial prod_{j=1..k} [2j-1]_q.

    Reduces to (2k-1)!! as q -> 1; cancels identically in the
    cross-formula moment comparisons that carry it on both sides.
    """
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    q = require_base(q)
    p = Fraction(1)
    for j in range(1, k + 1):
        p *= (1 - q ** (2 * j - 1)) / (1 - q)
    return p


def q_pochhammer(a: Fraction, q: Fraction, n: int) -> Fraction:
    """(a;q)_n = prod_{i=0..n-1} (1 - a q^i); empty product at n = 0.

    The finite product is well-defined for any rational base (bases like
    q^{-2} occur in randomized-moment prefactors); 0 < q < 1 is enforced
    only where infinite ladders are involved.
    """
    if n < 0:
        raise ValueError("n must be a nonnegative integer (see q_pochhammer_bilateral)")
    a = to_rational(a)
    q = to_rational(q)
    p = Fraction(1)
    for i in range(n):
        p *= 1 - a * q**i
        if p == 0:
            return p
    return p


def q_pochhammer_qpow(j: int, q: Fraction, n: int) -> Fraction:
    """(q^j; q)_n for any integer j, computed through exact rationals."""
    q = require_base(q)
    return q_pochhammer(q**j, q, n)


def q_pochhammer_bilateral(a: Fraction, q: Fraction, n: int) -> Fraction:
    """(a;q)_n extended to negative n by (a;q)_{-m} = 1/(a q^{-m}; q)_m.

    The unique extension under which (a;q)_{n+1}/(a;q)_n = (1 - a q^n)
    holds for every integer n.
    """
    if n >= 0:
        return q_pochhammer(a, q, n)
    m = -n
    a = to_rational(a)
    q = require_base(q)
    den = q_pochhammer(a * q**-m, q, m)
    if den == 0:
        raise ZeroDivisionError(f"(a;q)_{n} undefined: (a q^{n};q)_{m} vanishes")
    return 1 / den


def pochhammer_classical(c: Fraction, n: int) -> Fraction:
    """Rising factorial (c)_n = c (c+1) ... (c+n-1); 1 at n = 0."""
    if n < 0:
        raise ValueError("n must be a nonnegative integer")
    c = to_rational(c)
    p = Fraction(1)
    for i in range(n):
        p *= c + i
        if p == 0:
            return p
    return p
