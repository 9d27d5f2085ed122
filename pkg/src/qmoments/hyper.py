"""Basic (r phi s) and classical (r F s) hypergeometric series.

Terminating series are summed exactly over rationals; non-terminating
ones are truncated with a certified geometric tail bound. The two
transformation identities used by the randomized q-Laguerre moments
(Heine's 2phi1 transform and the terminating 2phi1 -> 3phi2 transform)
are exposed as residual checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import Divergent, NonTerminating, ZeroDenominator
from .qcalc import ApproxValue, TruncationPolicy, default_policy, infinite_qpoch
from .qarith import require_base, to_rational

TERMINATION_SEARCH_BOUND = 512


def q_power_order(a: Fraction, q: Fraction, bound: int = TERMINATION_SEARCH_BOUND):
    """Return m if a == q^{-m} exactly for some 0 <= m <= bound, else None.

    Detection is by exact repeated division (never by logarithms).
    """
    a = to_rational(a)
    if a <= 0:
        return None
    v = a
    for m in range(bound + 1):
        if v == 1:
            return m
        if v < 1:
            return None
        v = v * q
    return None


def termination_index(uppers, q, bound: int = TERMINATION_SEARCH_BOUND):
    """Smallest m with some upper parameter equal to q^{-m}, or None."""
    best = None
    for a in uppers:
        m = q_power_order(a, q, bound)
        if m is not None and (best is None or m < best):
            best = m
    return best


def _phi_term_ratio(uppers, lowers, q, z, i, extra):
    """t_{i+1}/t_i for the basic series, as an exact rational."""
    num = Fraction(1)
    for a in uppers:
        num *= 1 - a * q**i
    den = Fraction(1)
    for b in lowers:
        den *= 1 - b * q**i
    den *= 1 - q ** (i + 1)
    if den == 0:
        raise ZeroDenominator(f"denominator parameter vanishes at index {i + 1}")
    r = num / den * z
    if extra:
        r *= ((-1) * q**i) ** extra
    return r


def phi_terminating(uppers, lowers, q, z) -> Fraction:
    """Exact sum of a terminating r phi s series."""
    uppers = [to_rational(a) for a in uppers]
    lowers = [to_rational(b) for b in lowers]
    q = require_base(q)
    z = to_rational(z)
    n = termination_index(uppers, q)
    if n is None:
        raise NonTerminating("no upper parameter is a nonpositive q-power")
    for b in lowers:
        m = q_power_order(b, q)
        if m is not None and m < n:
            raise ZeroDenominator(
                f"lower parameter q^-{m} vanishes before termination index {n}")
    extra = 1 + len(lowers) - len(uppers)
    s = Fraction(0)
    t = Fraction(1)
    for i in range(n + 1):
        s += t
        if i == n:
            break
        t *= _phi_term_ratio(uppers, lowers, q, z, i, extra)
        if t == 0:
            break
    return s


def _ratio_majorant(uppers, lowers, q, z, J, extra):
    """Rigorous bound on |t_{i+1}/t_i| valid for every i >= J, or None.

    |1 - a q^i| <= 1 + |a| q^J and |1 - b q^i| >= 1 - |b| q^J for i >= J,
    so the bound is monotone decreasing in J (for extra >= 0)."""
    if extra < 0:
        return None
    num = abs(z) * q ** (J * extra)
    for a in uppers:
        num *= 1 + abs(a) * q**J
    den = 1 - q ** (J + 1)
    for b in lowers:
        f = 1 - abs(b) * q**J
        if f <= 0:
            return None
        den *= f
    return num / den


def phi_truncated(uppers, lowers, q, z,
                  policy: TruncationPolicy | None = None) -> ApproxValue:
    """Certified truncation of a (generally non-terminating) r phi s.

    Terms are summed until the rigorous geometric tail bound
    |t_J| rho_J/(1-rho_J) (rho_J a parameter-monotone majorant of all
    later term ratios) falls under the tolerance, or max_index is hit --
    in which case the still-certified, larger bound is returned."""
    uppers = [to_rational(a) for a in uppers]
    lowers = [to_rational(b) for b in lowers]
    q = require_base(q)
    z = to_rational(z)
    policy = policy or default_policy()
    extra = 1 + len(lowers) - len(uppers)
    if z == 0:
        return ApproxValue.exact(1)
    s = Fraction(0)
    t = Fraction(1)
    best = None  # (partial, bound) at the last certifiable index
    for i in range(policy.max_index):
        s += t
        rho = _ratio_majorant(uppers, lowers, q, z, i, extra)
        if rho is not None and rho < 1:
            tail = abs(t) * rho / (1 - rho)
            best = (s, tail)
            if tail <= policy.tolerance:
                return ApproxValue(s, tail)
        r = _phi_term_ratio(uppers, lowers, q, z, i, extra)
        t *= r
        if t == 0:
            return ApproxValue.exact(s)  # series terminated exactly
    if best is not None:
        return ApproxValue(*best)
    raise Divergent("no certified geometric tail within max_index terms")


@dataclass(frozen=True)
class HyperSeries:
    """Specification of a classical rFs or basic r phi s series."""

    kind: str  # 'classical' | 'basic'
    upper: tuple
    lower: tuple
    z: Fraction
    q: Fraction | None = None  # basic only
    mode: str = "exact-terminating"  # or 'approximate'
    tolerance: Fraction = field(default=Fraction(1, 10**30))
    max_terms: int = 4096

    def __post_init__(self):
        if self.kind not in ("classical", "basic"):
            raise ValueError("kind must be 'classical' or 'basic'")
        if self.kind == "basic" and self.q is None:
            raise ValueError("basic series needs a base q")


def eval_phi(spec: HyperSeries):
    """Evaluate a basic series spec: exact Fraction or ApproxValue."""
    if spec.kind != "basic":
        raise ValueError("eval_phi expects a basic series")
    if spec.mode == "exact-terminating":
        return phi_terminating(spec.upper, spec.lower, spec.q, spec.z)
    return phi_truncated(spec.upper, spec.lower, spec.q, spec.z,
                         TruncationPolicy(spec.tolerance, spec.max_terms))


def classical_F(uppers, lowers, z) -> Fraction:
    """Exact terminating r F s with rational parameters.

    Termination requires some upper parameter in {0, -1, -2, ...}.
    """
    uppers = [to_rational(a) for a in uppers]
    lowers = [to_rational(b) for b in lowers]
    z = to_rational(z)
    n = None
    for a in uppers:
        if a <= 0 and a.denominator == 1:
            m = -int(a)
            if n is None or m < n:
                n = m
    if n is None:
        raise NonTerminating("no upper parameter is a nonpositive integer")
    for b in lowers:
        if b <= 0 and b.denominator == 1 and -int(b) < n:
            raise ZeroDenominator(
                f"lower parameter {b} vanishes before termination index {n}")
    s = Fraction(0)
    t = Fraction(1)
    for i in range(n + 1):
        s += t
        if i == n:
            break
        num = Fraction(1)
        for a in uppers:
            num *= a + i
        den = Fraction(1)
        for b in lowers:
            den *= b + i
        den *= i + 1
        if den == 0:
            raise ZeroDenominator(f"denominator vanishes at index {i + 1}")
        t *= num / den * z
        if t == 0:
            break
    return s


def eval_F(spec: HyperSeries) -> Fraction:
    if spec.kind != "classical":
        raise ValueError("eval_F expects a classical series")
    return classical_F(spec.upper, spec.lower, spec.z)


def heine_transform_residual(a, b, c, q, z, order: int = 64,
                             policy: TruncationPolicy | None = None) -> ApproxValue:
    """|LHS - RHS| of Heine's transform, with its certified error budget.

    2phi1(a,b;c;q,z) = ((abz/c;q)_inf/(z;q)_inf) 2phi1(c/a,c/b;c;q,abz/c).
    Requires |z| < 1 and |abz/c| < 1.
    """
    a, b, c, z = map(to_rational, (a, b, c, z))
    q = require_base(q)
    policy = policy or default_policy()
    if not (abs(z) < 1):
        raise Divergent("Heine transform needs |z| < 1")
    w = a * b * z / c
    if not (abs(w) < 1):
        raise Divergent("Heine transform needs |abz/c| < 1")
    pol = TruncationPolicy(policy.tolerance, max(order, 8))
    lhs = phi_truncated([a, b], [c], q, z, pol)
    pref = infinite_qpoch(w, q, policy) / infinite_qpoch(z, q, policy)
    rhs = pref * phi_truncated([c / a, c / b], [c], q, w, pol)
    diff = lhs - rhs
    return ApproxValue(abs(diff.value), diff.bound)


def jackson_transform_residual(n: int, b, c, q, z,
                               policy: TruncationPolicy | None = None) -> ApproxValue:
    """Residual of the terminating 2phi1 -> 3phi2 transformation.

    2phi1(q^-n, b; c; q, z)
      = ((q^-n b z/c;q)_inf/(b z/c;q)_inf) 3phi2(q^-n, c/b, 0; c, qc/(bz); q, q).
    Both series are exact; only the prefactor carries a certified bound.
    """
    if n < 0:
        raise ValueError("n must be a nonnegative integer")
    b, c, z = map(to_rational, (b, c, z))
    q = require_base(q)
    policy = policy or default_policy()
    if z == 0:
        return ApproxValue.exact(0)
    lhs = phi_terminating([q**-n, b], [c], q, z)
    pref = infinite_qpoch(q**-n * b * z / c, q, policy) / infinite_qpoch(b * z / c, q, policy)
    series = phi_terminating([q**-n, c / b, Fraction(0)], [c, q * c / (b * z)], q, q)
    rhs = pref.scale(series)
    diff = ApproxValue.exact(lhs) - rhs
    return ApproxValue(abs(diff.value), diff.bound)
