"""Dense power-series helpers over exact rationals (coefficient lists)."""

from fractions import Fraction


def poly_mul(p, r):
    out = [Fraction(0)] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(r):
            if b:
                out[i + j] += a * b
    return out


def poly_from_factors(factors):
    """Expand prod (c0 + c1*x) given as (c0, c1) pairs."""
    p = [Fraction(1)]
    for c0, c1 in factors:
        p = poly_mul(p, [Fraction(c0), Fraction(c1)])
    return p


def series_div(num, den, order: int):
    """Coefficients 0..order of num(x)/den(x); requires den[0] != 0."""
    if not den or den[0] == 0:
        raise ZeroDivisionError("series division needs a unit constant term")
    num = list(num) + [Fraction(0)] * max(0, order + 1 - len(num))
    out = []
    inv0 = 1 / Fraction(den[0])
    for n in range(order + 1):
        acc = num[n] if n < len(num) else Fraction(0)
        for j in range(1, min(n, len(den) - 1) + 1):
            acc -= den[j] * out[n - j]
        out.append(acc * inv0)
    return out


def series_pow_binomial(c, exponent: int, order: int):
    """Coefficients 0..order of (1 + c*x)^exponent for integer exponent (any sign)."""
    c = Fraction(c)
    coeffs = [Fraction(1)]
    binom = Fraction(1)
    for j in range(1, order + 1):
        binom *= Fraction(exponent - j + 1, j)
        coeffs.append(binom * c**j)
    return coeffs
