"""Exception types shared across the package."""


class CapacityError(ValueError):
    """An operation needs coefficients beyond the available truncation degree."""


class NotIsotropicError(ValueError):
    """The holomorphic jets do not span a g-isotropic subspace."""


class InvalidRepresentationError(ValueError):
    """An (f, g) pair violates the hypotheses of the R^3 representation."""


class GridTooCoarseError(RuntimeError):
    """A discretised eigenvalue estimate failed its refinement check."""
