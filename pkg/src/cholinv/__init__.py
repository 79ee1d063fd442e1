"""Cholesky/LDL based inversion of Hermitian positive-definite matrices.

Includes a reduced-operation inversion that skips the forward triangular
solve, instrumented operation counting, and a fixed-point (Qm.f) error
analysis harness.
"""

from ._backend import available_backends, backend_name, set_backend, use_backend
from .decompose import CholResult, LdlResult, cholesky_upper, ldl_upper
from .errors import (
    LinAlgError,
    NotHermitianError,
    NotPositiveDefiniteError,
    SingularDiagonalError,
    SingularMatrixError,
    ZeroPivotError,
)
from .inverse import (
    ALL_METHODS,
    InverseMethod,
    ShortcutDiagonal,
    build_shortcut,
    invert,
    invert_eqsolve,
    invert_nonhermitian,
    invert_proposed,
    invert_trimat,
)
from .numerics import (
    FxpComplex,
    OpCounter,
    QFormat,
    frobenius_norm,
    fxp_mul,
    hermitian_mirror,
    make_prng,
    quantize,
    random_hermitian_pd,
)
from .trisolve import solve_ldl_lower, solve_lower, solve_upper, triangular_inverse

__version__ = "0.1.0"

__all__ = [
    "ALL_METHODS",
    "CholResult",
    "FxpComplex",
    "InverseMethod",
    "LdlResult",
    "LinAlgError",
    "NotHermitianError",
    "NotPositiveDefiniteError",
    "OpCounter",
    "QFormat",
    "ShortcutDiagonal",
    "SingularDiagonalError",
    "SingularMatrixError",
    "ZeroPivotError",
    "available_backends",
    "backend_name",
    "build_shortcut",
    "cholesky_upper",
    "frobenius_norm",
    "fxp_mul",
    "hermitian_mirror",
    "invert",
    "invert_eqsolve",
    "invert_nonhermitian",
    "invert_proposed",
    "invert_trimat",
    "ldl_upper",
    "make_prng",
    "quantize",
    "random_hermitian_pd",
    "set_backend",
    "solve_ldl_lower",
    "solve_lower",
    "solve_upper",
    "triangular_inverse",
    "use_backend",
]
