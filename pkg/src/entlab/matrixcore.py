"""Dense complex-matrix substrate.

Everything downstream works with small dense complex matrices (two-qubit
density matrices, Choi matrices): this module centralizes their validation
(squareness, finite entries, Hermiticity) and the eigenvalue routine, so the
rest of the package never calls LAPACK directly. Matrices are plain
``numpy.ndarray`` values with ``complex128`` entries; they are never mutated
after validation and are safe to share between threads.

Eigenvalues are only ever needed for matrices up to dimension 16 (a 4x4
density matrix, its 16x16 Choi companion at most), hence the hard cap.
"""

from __future__ import annotations

import numpy as np

from .errors import EigensolverError, NotHermitianError, ValidationError

#: Largest dimension the eigensolver accepts.
MAX_EIG_DIM = 16

#: Default tolerance for Hermiticity / positivity checks.
DEFAULT_TOL = 1e-10


def as_matrix(m, dim: int | None = None) -> np.ndarray:
    """Validate and return ``m`` as a square complex128 matrix.

    Raises ValidationError if ``m`` is not square, contains non-finite
    entries, or does not have dimension ``dim`` (when given).
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise ValidationError(f"expected dimension {dim}, got {a.shape[0]}")
    if not np.all(np.isfinite(a.view(np.float64))):
        raise ValidationError("matrix entries must be finite (no NaN/Inf)")
    return a


def frobenius_norm(m) -> float:
    return float(np.linalg.norm(np.asarray(m)))


def hermiticity_defect(m) -> float:
    """Largest entry-wise deviation of ``m`` from its conjugate transpose."""
    a = np.asarray(m)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def is_hermitian(m, tol: float = DEFAULT_TOL) -> bool:
    return hermiticity_defect(m) <= tol


def require_hermitian(m, tol: float = DEFAULT_TOL, what: str = "matrix") -> np.ndarray:
    a = as_matrix(m)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NotHermitianError(
            f"{what} is not Hermitian: max |m - m^dagger| = {defect:.3e} > tol {tol:.3e}"
        )
    return a


def eigenvalues(m) -> np.ndarray:
    """Eigenvalues (with multiplicity) of a square complex matrix, dim <= 16.

    The return order is unspecified; callers sort. For Hermitian input the
    imaginary parts are below 1e-10 times the matrix norm. A LAPACK
    convergence failure, or a spectrum whose sum disagrees with the trace,
    raises EigensolverError carrying the residual.
    """
    a = as_matrix(m)
    if a.shape[0] > MAX_EIG_DIM:
        raise ValidationError(
            f"eigensolver supports dimension <= {MAX_EIG_DIM}, got {a.shape[0]}"
        )
    try:
        vals = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:  # iteration cap exceeded inside LAPACK
        raise EigensolverError(f"eigensolver failed: {exc}") from exc
    residual = abs(complex(np.sum(vals)) - complex(np.trace(a)))
    scale = max(1.0, frobenius_norm(a))
    if residual > 1e-8 * scale:
        raise EigensolverError(
            f"eigensolver failed: eigenvalue sum deviates from trace by {residual:.3e}",
            residual=residual,
        )
    return vals


def eigenvalues_hermitian(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Real ascending eigenvalues of a Hermitian matrix (checked within tol)."""
    a = require_hermitian(m, tol)
    try:
        return np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver failed: {exc}") from exc


def is_psd(m, tol: float = DEFAULT_TOL) -> bool:
    """True iff the Hermitian matrix ``m`` has min eigenvalue >= -tol.

    Raises NotHermitianError when ``m`` is not Hermitian within tol.
    """
    vals = eigenvalues_hermitian(m, tol)
    return bool(vals.size == 0 or vals[0] >= -tol)


def validate_density_matrix(rho, dim: int | None = None, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return the validated array."""
    a = require_hermitian(as_matrix(rho, dim), tol, what="density matrix")
    tr = complex(np.trace(a))
    if abs(tr - 1.0) > max(tol, 1e-10):
        raise ValidationError(f"density matrix trace is {tr:.12g}, expected 1")
    if not is_psd(a, tol):
        lo = float(eigenvalues_hermitian(a, tol)[0])
        raise ValidationError(f"density matrix is not positive semidefinite (min eig {lo:.3e})")
    return a
