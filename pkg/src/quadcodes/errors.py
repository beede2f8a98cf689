"""Exception types shared across the package."""


class QuadCodesError(Exception):
    """Base class for all package-specific errors."""


class NonPrime(QuadCodesError):
    """The given modulus is not a prime number."""


class EvenCharacteristic(QuadCodesError):
    """p = 2 is not supported; odd characteristic is required throughout."""


class ReducibleModulus(QuadCodesError):
    """The supplied extension-field modulus is not irreducible over F_p."""


class DimensionMismatch(QuadCodesError):
    """A coordinate vector has the wrong length for its field or space."""


class NotQuadratic(QuadCodesError):
    """An evaluation table does not agree with any quadratic form X A X^T."""


class RankTooSmall(QuadCodesError):
    """The requested subspace construction needs a larger form rank."""


class BadResidue(QuadCodesError):
    """A Galois automorphism index must be coprime to p."""


class OracleMismatch(QuadCodesError):
    """A closed-form value disagreed with direct enumeration (a bug, never expected)."""


class BadDims(QuadCodesError):
    """Subspace dimensions out of range for the ambient space."""


class BadSubspace(QuadCodesError):
    """A subspace does not satisfy the operation's containment precondition."""


class TooLarge(QuadCodesError):
    """An enumeration would exceed the configured desk-scale limit."""


class NonIntegerWeight(QuadCodesError):
    """A weight-table entry evaluated to a non-integer; parameters are out of regime."""


class EmptyCode(QuadCodesError):
    """The weight distribution has no nonzero weight."""


class DimensionDeficient(QuadCodesError):
    """The code dimension is below s, so subspace-based GHW formulas do not apply."""


class NoApplicableTheorem(QuadCodesError):
    """No closed-form hierarchy branch covers the given parameters (R = 0)."""


class ConfigError(QuadCodesError):
    """A run configuration file is missing, malformed, or inconsistent."""
