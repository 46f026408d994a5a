"""Dense linear algebra for small composite quantum systems.

All routines work on complex numpy arrays and are meant for the matrix
sizes that show up in this package (products of subsystem dimensions up
to a few dozen). Shared numerical tolerances live here so the rest of
the library agrees on what "Hermitian" or "positive" means.
"""

from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    EigensolverError,
    InvalidInputError,
    NotHermitianError,
    NotPSDError,
)

#: Maximum absolute entry of (m - m^dagger) accepted as Hermitian.
HERMITICITY_TOL = 1e-10

#: Eigenvalues in [-PSD_TOL, 0) are treated as roundoff and clamped to zero;
#: anything below -PSD_TOL fails positivity checks.
PSD_TOL = 1e-10

#: Relative Frobenius tolerance for decompose/reconstruct round trips.
RECONSTRUCT_TOL = 1e-9

#: Relative cutoff under which eigenvalues of a PSD matrix are treated as
#: exact zeros when taking square roots. Without this, eigensolver noise of
#: order eps on a singular matrix turns into sqrt(eps) ~ 1e-8 garbage in the
#: root, which is three orders of magnitude above RECONSTRUCT_TOL-level
#: agreement expected downstream.
ZERO_EIGENVALUE_CUTOFF = 64 * np.finfo(float).eps


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce ``m`` to a square complex matrix, validating shape and finiteness."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(
            f"{name} must be square 2-D, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return arr


def hermiticity_deviation(m: np.ndarray) -> float:
    """Max absolute entry of m - m^dagger."""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def require_hermitian(m, tol: float = HERMITICITY_TOL, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as an array after checking Hermiticity to ``tol``."""
    arr = as_matrix(m, name)
    dev = hermiticity_deviation(arr)
    if dev > tol:
        raise NotHermitianError(
            f"{name} is not Hermitian: max |m - m^dagger| = {dev:.3e} exceeds {tol:.1e}"
        )
    return arr


class HermitianEig(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; column j of ``eigenvectors`` is
    the unit eigenvector for ``eigenvalues[j]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(m, name: str = "matrix") -> HermitianEig:
    """Eigendecompose a Hermitian matrix.

    Wraps :func:`numpy.linalg.eigh` with the package-wide Hermiticity check
    and converts convergence failures into :class:`EigensolverError`.
    """
    arr = require_hermitian(m, name=name)
    try:
        w, v = np.linalg.eigh(arr)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - hard to trigger
        raise EigensolverError(f"eigendecomposition of {name} failed: {exc}") from exc
    return HermitianEig(w, v)


def psd_sqrt(m, name: str = "matrix") -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in [-PSD_TOL, 0) are clamped to zero; a value below -PSD_TOL
    raises :class:`NotPSDError`. Tiny positive eigenvalues below
    ``ZERO_EIGENVALUE_CUTOFF`` relative to the largest one are also clamped,
    see the constant's note. The result S satisfies S @ S = m to
    RECONSTRUCT_TOL in relative Frobenius norm.
    """
    w, v = hermitian_eig(m, name=name)
    lo = float(w[0])
    if lo < -PSD_TOL:
        raise NotPSDError(
            f"{name} is not positive semidefinite: min eigenvalue {lo:.3e}"
        )
    cut = ZERO_EIGENVALUE_CUTOFF * max(float(w[-1]), 0.0)
    w = np.where(w < cut, 0.0, w)
    return (v * np.sqrt(w)) @ v.conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product with complex coercion."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _check_dims(m: np.ndarray, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise InvalidInputError(f"subsystem dimensions must be >= 1, got {dims}")
    total = int(np.prod(dims))
    if total != m.shape[0]:
        raise DimensionMismatchError(
            f"subsystem dimensions {dims} give total {total}, matrix has {m.shape[0]}"
        )
    return dims


def partial_trace(m, dims: Sequence[int], keep) -> np.ndarray:
    """Trace out all subsystems except ``keep``.

    Parameters
    ----------
    m : array
        Matrix on the tensor product of the subsystems listed in ``dims``.
    dims : sequence of int
        Subsystem dimensions, in tensor order.
    keep : int or sequence of int
        Indices into ``dims`` of the subsystems to retain, in order.
    """
    arr = as_matrix(m, "matrix")
    dims = _check_dims(arr, dims)
    n = len(dims)
    if isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    else:
        keep = tuple(int(k) for k in keep)
    for k in keep:
        if not 0 <= k < n:
            raise IndexError(f"keep index {k} out of range for {n} subsystems")
    if len(set(keep)) != len(keep):
        raise InvalidInputError(f"keep indices must be distinct, got {keep}")

    t = arr.reshape(dims + dims)
    # Contract each traced subsystem's row index with its column index.
    for k in sorted(set(range(n)) - set(keep), reverse=True):
        t = np.trace(t, axis1=k, axis2=k + (t.ndim // 2))
    d_keep = int(np.prod([dims[k] for k in keep]))
    out = t.reshape(d_keep, d_keep)
    if keep != tuple(sorted(keep)):
        # Reorder retained subsystems to the requested order.
        kept_sorted = sorted(keep)
        perm = [kept_sorted.index(k) for k in keep]
        shape = [dims[k] for k in kept_sorted]
        t = out.reshape(shape + shape)
        t = t.transpose(perm + [p + len(shape) for p in perm])
        out = t.reshape(d_keep, d_keep)
    return out


def partial_transpose(m, dims: Sequence[int], subsystem: int = 0) -> np.ndarray:
    """Transpose one subsystem of a bipartite matrix.

    ``dims`` must have exactly two entries; ``subsystem`` selects which of
    the two factors is transposed.
    """
    arr = as_matrix(m, "matrix")
    dims = _check_dims(arr, dims)
    if len(dims) != 2:
        raise DimensionMismatchError(f"partial transpose needs two subsystems, got {len(dims)}")
    if subsystem not in (0, 1):
        raise IndexError(f"subsystem must be 0 or 1, got {subsystem}")
    da, db = dims
    t = arr.reshape(da, db, da, db)
    if subsystem == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(da * db, da * db)


def trace_norm(m) -> float:
    """Sum of singular values."""
    arr = as_matrix(m, "matrix")
    return float(np.linalg.svd(arr, compute_uv=False).sum())


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Draw a dim x dim unitary from the Haar measure.

    QR of a complex Ginibre matrix with the R diagonal phases divided out,
    which corrects the raw QR distribution to the uniform one.
    """
    if int(dim) < 1:
        raise InvalidInputError(f"dimension must be >= 1, got {dim}")
    dim = int(dim)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
