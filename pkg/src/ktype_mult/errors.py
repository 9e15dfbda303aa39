"""Exception types.

Most of these signal an internal inconsistency (a bug in the bookkeeping),
never bad user input; the CLI maps them to exit code 1.
"""


class KTypeError(Exception):
    """Base class for all package errors."""


class NonDivisible(KTypeError, ArithmeticError):
    """Exact Laurent-polynomial division left a nonzero remainder."""


class NotDecomposable(KTypeError, ValueError):
    """Highest-weight subtraction hit a non-dominant leading term or a
    negative multiplicity in an input declared genuine."""


class EmbeddingMismatch(KTypeError, ValueError):
    """Inconsistent group sizes in a restriction or branching request."""


class UnsupportedRank(KTypeError, ValueError):
    """Ambient size above the configured desk-scale bound."""


class BadClassData(KTypeError, ValueError):
    """Finite-group class data violates its counting invariants."""


class BadAssignment(KTypeError, ValueError):
    """An eigenvalue multiset cannot be realised in the given block."""


class ResidualAbsFactor(KTypeError, ArithmeticError):
    """Absolute-value factors failed to cancel in an integrand summand."""


class NonIntegral(KTypeError, ArithmeticError):
    """A multiplicity for a genuine input came out non-integral or negative."""
