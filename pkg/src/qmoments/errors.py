"""Exception types shared across the library."""


class QMomentsError(Exception):
    """Base class for all library errors."""


class NonTerminating(QMomentsError):
    """Exact evaluation requested for a series with no terminating parameter."""


class ZeroDenominator(QMomentsError):
    """A lower parameter produces a vanishing denominator factor before termination."""


class Divergent(QMomentsError):
    """A truncated series cannot be certified to converge."""


class TailNotBounded(QMomentsError):
    """No decay envelope is available to certify a truncation tail."""


class ZeroPoint(QMomentsError):
    """Evaluation at x = 0 where the operation is undefined."""


class FormMismatch(QMomentsError):
    """Two displayed forms of the same polynomial disagree (implementation fault)."""


class InvalidOrder(QMomentsError):
    """Moment order outside the formula's domain (e.g. k = 0 in a 1/(1-q^{2k}) prefactor)."""


class DegreeOutOfRange(QMomentsError):
    """Polynomial degree outside the family's admissible range."""
