"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class LatticeCoverError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(LatticeCoverError, ValueError):
    pass


class InvalidBody(LatticeCoverError, ValueError):
    pass


class UnsupportedFamily(LatticeCoverError):
    """The operation needs data (e.g. a support function) the family lacks."""


class NonUnimodular(LatticeCoverError, ValueError):
    pass


class EnumerationBudgetExceeded(LatticeCoverError):
    """An enumeration window holds more grid points than the configured cap."""


class ZeroVector(LatticeCoverError, ValueError):
    pass


class NotPrimitive(LatticeCoverError, ValueError):
    pass


class MinimaNotComputed(LatticeCoverError, ValueError):
    pass


class HypothesisViolated(LatticeCoverError, ValueError):
    """A precondition on the successive minima (e.g. lambda_n <= 1) fails."""


class NoAdmissiblePrime(LatticeCoverError):
    pass


class InvalidNu(LatticeCoverError, ValueError):
    pass


class InstanceTooLarge(LatticeCoverError):
    pass


class InsufficientData(LatticeCoverError, ValueError):
    pass


class VerificationFailed(LatticeCoverError):
    """A constructed object failed its exact a-posteriori check.

    These signal internal inconsistencies, never bad user input.
    """


class NoLiftFound(VerificationFailed):
    pass


class CoverageVerificationFailed(VerificationFailed):
    pass


class SandwichViolation(VerificationFailed):
    pass
