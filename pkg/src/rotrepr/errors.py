"""Exception hierarchy shared by all rotrepr modules."""


class RotationError(ValueError):
    """Base class for every error raised by this package."""


class DegenerateInputError(RotationError):
    """Input is structurally unusable (zero quaternion, rank-deficient
    matrix, parallel 6D columns, vanishing interpolation blend)."""


class InvalidRotationError(RotationError):
    """A matrix claimed to be a rotation failed the orthogonality or
    determinant check."""


class UnsupportedConventionError(RotationError):
    """Euler extraction was requested for a convention without extraction
    formulas (only intrinsic ZYX and XYZ are supported)."""


class DegeneracyError(RotationError):
    """A well-formed input turned out to be geometrically degenerate
    (collinear point cloud, rank-deficient Fisher parameter, ...)."""


class NonUniqueModeError(DegeneracyError):
    """A distribution mode is not unique (tied concentrations)."""


class ContractViolationError(RotationError):
    """A caller violated a documented precondition (e.g. a non-symmetric
    matrix passed to the symmetric eigensolver)."""
