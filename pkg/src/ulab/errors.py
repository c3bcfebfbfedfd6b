"""Error types, one per contract violation the library reports."""


class UlabError(ValueError):
    """Base class for all validation failures raised by this package."""


class NonHermitianInput(UlabError):
    """Matrix expected to be Hermitian is not (within tolerance)."""


class NotPSD(UlabError):
    """Matrix has an eigenvalue below the positive-semidefinite clip threshold."""


class BadDim(UlabError):
    """Matrix has the wrong shape for the operation."""


class BadIndex(UlabError):
    """Index outside the accepted range (e.g. Pauli index not in 1..3)."""


class InvalidParams(UlabError):
    """Parameter set violates one of its defining inequalities."""


class OutOfRange(UlabError):
    """Scalar parameter outside its allowed interval."""


class Unphysical(UlabError):
    """Constructed matrix is not a density matrix (reports the offending eigenvalue)."""


class RankTooHigh(UlabError):
    """State rank exceeds what the operation supports."""


class DimMismatch(UlabError):
    """Operands have incompatible dimensions."""


class DegenerateObservable(UlabError):
    """Observable spectrum too degenerate to define its eigenbasis."""


class NotADistribution(UlabError):
    """Probability vector is not normalized or has negative entries."""


# Alias used where the operand (not the input state) fails Hermiticity.
NonHermitian = NonHermitianInput
