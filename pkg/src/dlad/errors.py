"""Exception types raised by the library.

Everything derives from DladError so callers can catch domain failures in one
clause; the CLI maps ConfigError to exit code 2 and check failures to 1.
"""

from __future__ import annotations


class DladError(Exception):
    """Base class for all library errors."""


class ConfigError(DladError):
    """Invalid run configuration (bad rank, characteristic, flag combination)."""


class DenominatorDivisibleByP(ConfigError):
    """A reduced denominator is divisible by the working characteristic."""


class SingularBasis(DladError):
    """The supplied integer matrix is not invertible (det 0)."""


class RankMismatch(DladError):
    """Objects of different ranks were combined."""


class NotClosedUnderNegation(DladError):
    """A root set was expected to contain the negative of each member."""


class UnclassifiableComponent(DladError):
    """An indecomposable root component is not of type A or D."""


class BoundExceeded(DladError):
    """A search or enumeration would exceed the configured size bound."""


class NotInStabilizer(DladError):
    """The given Weyl element does not fix the given torus element."""


class OddParity(DladError):
    """An even signed permutation (even flip count) was required."""


class FrobeniusPowerZero(DladError):
    """A genuine Frobenius (positive p-power) was required, got a = 0."""


class NotFixed(DladError):
    """The endomorphism does not fix the given point."""


class NotStable(DladError):
    """The geometric class is not stable under the given endomorphism."""


class HypothesisViolated(DladError):
    """A standing hypothesis of the requested check fails for this input."""


class DenominatorNotSplit(DladError):
    """Field too small: some denominator does not divide q - 1.

    ``suggested_degree`` is the least extension degree over the prime field
    that splits every requested denominator.
    """

    def __init__(self, message: str, suggested_degree: int | None = None):
        super().__init__(message)
        self.suggested_degree = suggested_degree
