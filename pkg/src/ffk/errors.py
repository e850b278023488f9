"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract: parameter problems are 2,
resource caps 3, violated mathematical contracts 4, I/O errors 5.
"""


class FfkError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(FfkError, ValueError):
    """Invalid user-supplied parameter (bad prime, non-squarefree N, ...)."""


class CapExceeded(FfkError):
    """A configurable resource cap (degree, component count) was exceeded."""


class MathContractError(FfkError):
    """An identity that must hold exactly failed.

    This signals either an implementation bug or a genuine discrepancy in the
    encoded intersection data; it is never a user error.
    """


class NoSolutionError(ParameterError):
    """The requested linear system has no solution (incompatible targets)."""
