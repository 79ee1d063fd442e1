"""Exceptions raised by the factorization, solve and inversion routines.

Pivot and diagonal indices are 1-based, matching the usual matrix notation
used in error messages and CLI diagnostics.
"""


class LinAlgError(ValueError):
    """Base class for all numerical failures in this package."""


class NotHermitianError(LinAlgError):
    def __init__(self, deviation: float):
        self.deviation = deviation
        super().__init__(f"matrix is not Hermitian (max |a_ij - conj(a_ji)| = {deviation:.3e})")


class NotPositiveDefiniteError(LinAlgError):
    def __init__(self, pivot: int):
        self.pivot = pivot
        super().__init__(f"matrix is not positive definite: non-positive radicand at pivot {pivot}")


class ZeroPivotError(LinAlgError):
    def __init__(self, pivot: int):
        self.pivot = pivot
        super().__init__(f"LDL factorization hit a zero pivot at index {pivot}")


class SingularDiagonalError(LinAlgError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"triangular matrix has a (near-)zero diagonal entry at index {index}")


class SingularMatrixError(LinAlgError):
    def __init__(self, cause: LinAlgError | None = None):
        self.cause = cause
        msg = "matrix is singular"
        if cause is not None:
            msg += f" ({cause})"
        super().__init__(msg)
