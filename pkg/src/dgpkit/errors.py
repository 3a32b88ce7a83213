"""Exception types raised across the package."""


class DgpError(Exception):
    """Base class for all package errors."""


class InsufficientData(DgpError, ValueError):
    """Too few observations for the requested statistic."""


class DomainError(DgpError, ValueError):
    """A value lies outside the domain of a return convention or formula."""


class ReturnUndefined(DomainError):
    """Raised when a return is requested for a zero-cost value process."""


class ShapeError(DgpError, ValueError):
    """Series lengths are incompatible."""


class ZeroCostViolation(DgpError, ValueError):
    """Long and short legs do not start from the same capital."""


class SingularDesign(DgpError, ValueError):
    """Regression design matrix is rank deficient."""


class DegenerateSeries(DgpError, ValueError):
    """A series has zero dispersion where a positive one is required."""


class ParseError(DgpError, ValueError):
    """An input file is malformed."""
