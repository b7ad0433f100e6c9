"""Exception types shared across the package."""


class ChebrankError(Exception):
    """Base class for solver failures."""


class DegenerateSystem(ChebrankError):
    """A linear subsystem that the algorithms rely on is singular.

    Raised when a row subset of the factor matrix is not a Chebyshev
    system (some square submatrix is numerically singular), so neither
    the determinant formula nor the sign-system solve is defined.
    """


class NonTermination(ChebrankError):
    """The exchange loop hit its iteration cap.

    In exact arithmetic the exchange deviation increases strictly, so the
    loop is finite; hitting the cap is a numerical diagnostic, not a
    silent truncation.
    """
