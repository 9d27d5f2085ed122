"""Integer partitions, hooks, contents, and Schur-function specializations.

Only what the moment routes need: generic hook/content machinery, the
principal specializations at geometric progressions, hook-shape
characters, and the Schur-polynomial expectations under the q-Laguerre
and classical Laguerre ensembles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qarith import require_base, to_rational

MAX_PARTITION_SIZE = 64


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts; the empty partition is Partition(())."""

    parts: tuple

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError("parts must be strictly positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("parts must be weakly decreasing")
        if sum(parts) > MAX_PARTITION_SIZE:
            raise ValueError(f"partitions are capped at size {MAX_PARTITION_SIZE}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def rows(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        return Partition(tuple(sum(1 for p in self.parts if p > j)
                               for j in range(self.parts[0])))

    def cells(self):
        """1-based (i, j) cells of the Young diagram, row by row."""
        for i, p in enumerate(self.parts, start=1):
            for j in range(1, p + 1):
                yield (i, j)

    def hook_length(self, i: int, j: int) -> int:
        """arm + leg + 1 for the 1-based cell (i, j)."""
        conj = self.conjugate().parts
        return (self.parts[i - 1] - j) + (conj[j - 1] - i) + 1

    def content(self, i: int, j: int) -> int:
        return j - i


def hook_partition(k: int, l: int) -> Partition:
    """The hook shape (k-l, 1^l) of size k, 0 <= l <= k-1."""
    if not (1 <= k and 0 <= l <= k - 1):
        raise ValueError("need k >= 1 and 0 <= l <= k-1")
    return Partition((k - l,) + (1,) * l)


@dataclass(frozen=True)
class CellStat:
    cell: tuple
    hook: int
    content: int


def hooks(lam: Partition):
    """One CellStat per diagram cell."""
    conj = lam.conjugate().parts
    out = []
    for i, p in enumerate(lam.parts, start=1):
        for j in range(1, p + 1):
            h = (p - j) + (conj[j - 1] - i) + 1
            out.append(CellStat((i, j), h, j - i))
    return out


def b_stat(lam: Partition) -> int:
    """b(lambda) = sum (i-1) lambda_i."""
    return sum(i * p for i, p in enumerate(lam.parts))


def hook_character(k: int, l: int) -> int:
    """Character of the power sum p_(k) on the hook shape (k-l, 1^l): (-1)^l."""
    if not (0 <= l <= k - 1):
        raise ValueError("need 0 <= l <= k-1")
    return -1 if l % 2 else 1


def principal_spec_infinite(lam: Partition, q: Fraction) -> Fraction:
    """s_lambda(1, q^2, q^4, ...) = q^{2 b(lam)} / prod_cells (1 - q^{2h})."""
    q = require_base(q)
    Q = q * q
    v = Q ** b_stat(lam)
    for cs in hooks(lam):
        v /= 1 - Q**cs.hook
    return v


def principal_spec_finite(lam: Partition, N: int, q: Fraction) -> Fraction:
    """s_lambda(1, q^2, ..., q^{2N-2}); 0 when lam has more than N rows."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    q = require_base(q)
    Q = q * q
    v = Q ** b_stat(lam)
    for cs in hooks(lam):
        num = 1 - Q ** (N + cs.content)
        if num == 0:
            return Fraction(0)
        v *= num
        v /= 1 - Q**cs.hook
    return v


def schur_expectation_qlag(lam: Partition, N: int, alpha: int, q: Fraction) -> Fraction:
    """Expectation of s_lambda under the N-particle q-Laguerre ensemble.

    q^{k(2-2N-alpha)}/(1-q^2)^k times the ratio of principal
    specializations at N, N+alpha and infinitely many variables.
    """
    if alpha < 0:
        raise ValueError("alpha must be a nonnegative integer")
    q = require_base(q)
    k = lam.size
    pref = q ** (k * (2 - 2 * N - alpha)) / (1 - q * q) ** k
    return (pref
            * principal_spec_finite(lam, N, q)
            * principal_spec_finite(lam, N + alpha, q)
            / principal_spec_infinite(lam, q))


def schur_expectation_classical(lam: Partition, n: int, alpha: int) -> Fraction:
    """H_lam * s_lam(1^n) * s_lam(1^{n+alpha}) via hooks and contents."""
    if n < 1 or alpha < 0:
        raise ValueError("need n >= 1 and alpha >= 0")
    v = Fraction(1)
    for cs in hooks(lam):
        v *= Fraction((n + cs.content) * (n + alpha + cs.content), cs.hook)
    return v
