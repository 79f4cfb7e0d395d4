"""Exception hierarchy.

Everything raised on purpose by this package derives from :class:`KreinError`,
so callers can catch one type at API boundaries.
"""


class KreinError(Exception):
    """Base class for all errors raised by this package."""


class NonSquare(KreinError):
    """Operation requires a square matrix."""


class EmptyMatrix(KreinError):
    """Operation requires a nonempty matrix."""


class NotHermitian(KreinError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class Singular(KreinError):
    """Matrix is numerically singular; carries the offending sigma_min."""

    def __init__(self, msg, sigma_min):
        super().__init__(msg)
        self.sigma_min = sigma_min


class DimensionMismatch(KreinError):
    """Vector or matrix dimensions are incompatible."""


class DegenerateMetric(KreinError):
    """Metric matrix has (numerically) a kernel and defines no valid space."""


class NotInSubspace(KreinError):
    """Vector does not lie in the requested definite subspace."""


class SplitMismatch(KreinError):
    """Two families carry different index splits."""


class MixedMembership(KreinError):
    """A family member sits outside the definite subspace of its index class."""


class SingularOperator(KreinError):
    """Operator matrix is not numerically bijective."""


class NotRiesz(KreinError):
    """Family failed Riesz certification; carries the failure reason."""

    def __init__(self, msg, reason=None):
        super().__init__(msg)
        self.reason = reason


class CountMismatch(KreinError):
    """Index-class size disagrees with the subspace dimension."""


class LowerBoundZero(KreinError):
    """Family has no positive lower Riesz-type bound on the requested half."""


class DefectImpossible(KreinError):
    """Requested defect cannot be planted in an instance of this shape."""


class ParseError(KreinError):
    """Input file is not valid JSON."""


class SchemaError(KreinError):
    """Input file is valid JSON but violates the instance schema."""


class BadFlags(KreinError):
    """Command-line flags are inconsistent or out of range."""
