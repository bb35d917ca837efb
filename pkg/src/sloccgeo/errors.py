"""Exception types shared across the package.

Out-of-range state-file indices raise the builtin ``IndexError``; everything
else gets a dedicated class so callers can tell input degeneracy apart from
bad prime choices and malformed data.
"""


class SloccGeoError(Exception):
    """Base class for all package-specific errors."""


class DegenerateInputError(SloccGeoError):
    """The input state is outside the generic locus an operation requires."""


class RankDeficientError(DegenerateInputError):
    """The flattening image has dimension below the local dimension d."""

    def __init__(self, dim, expected):
        super().__init__(f"flattening image has dimension {dim}, expected {expected}")
        self.dim = dim
        self.expected = expected


class InsufficientPointsError(DegenerateInputError):
    """Too few (or too degenerate) finite-field points to trust a kernel."""


class AllPrimesBadError(DegenerateInputError):
    """Every candidate prime hit bad reduction."""


class BadReductionError(SloccGeoError):
    """A denominator vanishes modulo the chosen prime."""

    def __init__(self, p, value=None):
        detail = f" for {value}" if value is not None else ""
        super().__init__(f"denominator divisible by {p}{detail}")
        self.p = p


class SchemaError(SloccGeoError):
    """A state document does not match the expected JSON schema."""


class DuplicateIndexError(SchemaError):
    """A state document lists the same coefficient index twice."""


class SingularOperatorError(SloccGeoError):
    """A local operator factor is not invertible."""


class UnsupportedFormatError(SloccGeoError):
    """The (n, d) format is outside the supported range for this operation."""


class NotOnVarietyError(SloccGeoError):
    """A point fails the defining equations it was claimed to satisfy."""


class WrongDegreeError(SloccGeoError):
    """A polynomial argument has the wrong (multi)degree."""


class WrongFormatError(SloccGeoError):
    """A tensor argument has the wrong (n, d) format."""


class FormatMismatchError(SloccGeoError):
    """Two tensors that should share a format do not."""
