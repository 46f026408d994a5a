"""Bipartite states: density matrices, Schmidt data, and the lossy
two-mode interferometer family.

The density-matrix JSON interchange format is
``{"dimA": int, "dimB": int, "re": [[..]], "im": [[..]]}`` with ``re`` and
``im`` the real and imaginary parts of the full matrix, row-major.
"""

import json
from dataclasses import dataclass
from math import comb, sqrt

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError
from .linalg import (
    HERMITICITY_TOL,
    PSD_TOL,
    as_matrix,
    hermiticity_deviation,
    partial_trace,
)

#: Absolute tolerance on trace(rho) = 1 and on unit norm of pure states.
TRACE_TOL = 1e-10
NORM_TOL = 1e-12


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class PureBipartiteState:
    """Pure state of an A x B system, stored as its coefficient matrix.

    ``coefficients[a, b]`` is the amplitude on basis ket |a>|b>. The matrix
    must have unit Frobenius norm.
    """

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 2:
            raise DimensionMismatchError(
                f"coefficient matrix must be 2-D, got shape {c.shape}"
            )
        if not np.all(np.isfinite(c.real)) or not np.all(np.isfinite(c.imag)):
            raise InvalidInputError("coefficient matrix contains non-finite entries")
        norm = float(np.linalg.norm(c))
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidInputError(
                f"pure state must have unit norm, got {norm:.12g}"
            )
        object.__setattr__(self, "coefficients", _readonly(c))

    @property
    def dim_a(self) -> int:
        return self.coefficients.shape[0]

    @property
    def dim_b(self) -> int:
        return self.coefficients.shape[1]

    @property
    def vector(self) -> np.ndarray:
        """State vector on the dim_a * dim_b product space."""
        return self.coefficients.reshape(-1)

    @classmethod
    def from_probabilities(cls, probabilities, dim_b: int | None = None):
        """Build a Schmidt-diagonal state with the given probability weights.

        ``probabilities`` must be nonnegative and sum to 1. The state is
        sum_j sqrt(p_j) |j>|j> on an A x B space with dim_a = len(p) and
        dim_b = max(dim_b, dim_a).
        """
        p = np.asarray(probabilities, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise InvalidInputError("probabilities must be a non-empty 1-D sequence")
        if np.any(p < -NORM_TOL):
            raise InvalidInputError(f"probabilities must be nonnegative, got {p.tolist()}")
        if abs(p.sum() - 1.0) > 1e-9:
            raise InvalidInputError(f"probabilities must sum to 1, got {p.sum():.12g}")
        da = p.size
        db = da if dim_b is None else int(dim_b)
        if db < da:
            raise DimensionMismatchError(f"dim_b = {db} cannot hold {da} Schmidt terms")
        c = np.zeros((da, db), dtype=complex)
        amp = np.sqrt(np.clip(p, 0.0, None))
        amp /= np.linalg.norm(amp)
        c[np.arange(da), np.arange(da)] = amp
        return cls(c)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Schmidt form of a pure bipartite state.

    ``coefficients`` are the nonnegative Schmidt coefficients in descending
    order (length min(dim_a, dim_b), zeros included); column j of ``basis_a``
    and ``basis_b`` holds the local vector paired with coefficients[j].
    """

    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    def __post_init__(self):
        coeff = np.array(self.coefficients, dtype=float)
        coeff.setflags(write=False)
        object.__setattr__(self, "coefficients", coeff)
        object.__setattr__(self, "basis_a", _readonly(self.basis_a))
        object.__setattr__(self, "basis_b", _readonly(self.basis_b))

    @property
    def probabilities(self) -> np.ndarray:
        """Squared Schmidt coefficients, descending."""
        return self.coefficients ** 2

    def reconstruct(self) -> np.ndarray:
        """Coefficient matrix rebuilt from the decomposition."""
        return (self.basis_a * self.coefficients) @ self.basis_b.T


def schmidt_decompose(state: PureBipartiteState) -> SchmidtDecomposition:
    """Schmidt-decompose a pure bipartite state via the SVD.

    The returned pieces satisfy ``reconstruct() == state.coefficients`` to
    RECONSTRUCT_TOL and the probability weights sum to 1.
    """
    if not isinstance(state, PureBipartiteState):
        state = PureBipartiteState(np.asarray(state, dtype=complex))
    u, s, vh = np.linalg.svd(state.coefficients)
    r = s.size
    return SchmidtDecomposition(s, u[:, :r], vh[:r, :].T)


@dataclass(frozen=True)
class StateReport:
    """Validation findings for a candidate density matrix."""

    dim_a: int
    dim_b: int
    hermiticity_deviation: float
    trace: float
    min_eigenvalue: float
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validation_report(matrix, dim_a: int, dim_b: int) -> StateReport:
    """Check a matrix against the density-matrix invariants.

    Structural problems (wrong shape for the declared dimensions) raise;
    quality problems (hermiticity, trace, positivity) are collected into the
    report so a caller can show all of them at once.
    """
    m = as_matrix(matrix, "density matrix")
    dim_a, dim_b = int(dim_a), int(dim_b)
    if dim_a < 1 or dim_b < 1:
        raise InvalidInputError(f"dimensions must be >= 1, got ({dim_a}, {dim_b})")
    if m.shape[0] != dim_a * dim_b:
        raise DimensionMismatchError(
            f"matrix of size {m.shape[0]} does not match dimA*dimB = {dim_a * dim_b}"
        )
    violations = []
    dev = hermiticity_deviation(m)
    if dev > HERMITICITY_TOL:
        violations.append(f"hermiticity violated: max |m - m^dagger| = {dev:.12g}")
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > TRACE_TOL:
        violations.append(f"trace violated: trace = {tr:.12g}")
    herm = 0.5 * (m + m.conj().T)
    lo = float(np.linalg.eigvalsh(herm)[0])
    if lo < -PSD_TOL:
        violations.append(f"PSD violated: min eigenvalue {lo:.12g}")
    return StateReport(dim_a, dim_b, dev, tr, lo, tuple(violations))


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density matrix on an A x B product space.

    Construction rejects anything that is not Hermitian, unit trace, and
    positive semidefinite (eigenvalues in [-PSD_TOL, 0) are accepted as
    roundoff). The stored array is read-only.
    """

    matrix: np.ndarray
    dim_a: int
    dim_b: int

    def __post_init__(self):
        report = validation_report(self.matrix, self.dim_a, self.dim_b)
        if not report.ok:
            raise InvalidInputError("; ".join(report.violations))
        object.__setattr__(self, "dim_a", int(self.dim_a))
        object.__setattr__(self, "dim_b", int(self.dim_b))
        object.__setattr__(self, "matrix", _readonly(self.matrix))

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    @classmethod
    def from_pure(cls, state: PureBipartiteState):
        v = state.vector
        return cls(np.outer(v, v.conj()), state.dim_a, state.dim_b)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def reduced(self, subsystem: int) -> np.ndarray:
        """Reduced density matrix of subsystem 0 (A) or 1 (B)."""
        return partial_trace(self.matrix, (self.dim_a, self.dim_b), subsystem)


# ---------------------------------------------------------------------------
# Lossy two-mode interferometer family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NoonChannelParams:
    """Parameters of an N-photon two-arm state with one lossy arm.

    ``n`` photons are prepared in an equal superposition of "all in arm A"
    and "all in arm B"; arm B passes a beam splitter with amplitude
    transmittance ``t`` (|t|^2 + |r|^2 = 1) and accumulates phase ``phi``
    per photon.
    """

    n: int
    t: complex
    r: complex
    phi: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidInputError(f"photon number must be a positive integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        t = complex(self.t)
        r = complex(self.r)
        total = abs(t) ** 2 + abs(r) ** 2
        if abs(total - 1.0) > NORM_TOL:
            raise InvalidInputError(
                f"|t|^2 + |r|^2 must equal 1, got {total:.12g}"
            )
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "phi", float(self.phi))

    @classmethod
    def from_transmittance(cls, n: int, t2: float, phi: float = 0.0):
        """Build params from the intensity transmittance T = |t|^2."""
        t2 = float(t2)
        if not 0.0 <= t2 <= 1.0:
            raise InvalidInputError(f"transmittance must lie in [0, 1], got {t2}")
        return cls(n, sqrt(t2), sqrt(1.0 - t2), phi)

    @property
    def transmittance(self) -> float:
        return abs(self.t) ** 2


def noon_tripartite(params: NoonChannelParams) -> np.ndarray:
    """Amplitude tensor of the purified lossy state, shape (2, n+1, n+1).

    Axis 0 is the two-level label of arm A with basis order (|0>_A, |n>_A),
    axis 1 the surviving photon number in arm B, axis 2 the photon number
    absorbed by the environment. The intact branch is (1/sqrt(2))
    |n>_A |0>_B |0>_E; the lossy branch spreads over
    (1/sqrt(2)) sqrt(C(n,k)) t^k r^(n-k) e^(i k phi) |0>_A |k>_B |n-k>_E,
    the phase entering once per photon that survives the lossy arm.
    """
    n = params.n
    t, r = params.t, params.r
    amp = np.zeros((2, n + 1, n + 1), dtype=complex)
    amp[1, 0, 0] = 1.0 / sqrt(2.0)
    for k in range(n + 1):
        amp[0, k, n - k] = (
            np.exp(1j * k * params.phi)
            * sqrt(comb(n, k)) * (t ** k) * (r ** (n - k)) / sqrt(2.0)
        )
    return amp


def noon_lossy_density(params: NoonChannelParams) -> DensityMatrix:
    """System density matrix after the environment is discarded.

    Built directly as a coherent rank-1 block on span{|n>_A |0>_B,
    |0>_A |n>_B} with off-diagonal weight t^n e^(i n phi) / 2, plus the
    photon-loss mixture on |0>_A |k>_B for k < n; equals the partial trace
    of :func:`noon_tripartite` over the environment.
    """
    n = params.n
    dim_b = n + 1
    tt = abs(params.t) ** 2
    rr = abs(params.r) ** 2
    coh = (params.t ** n) * np.exp(1j * n * params.phi)

    def idx(a, k):
        return a * dim_b + k

    dim = 2 * dim_b
    v = np.zeros(dim, dtype=complex)
    v[idx(1, 0)] = 1.0
    v[idx(0, n)] = coh
    rho = 0.5 * np.outer(v, v.conj())
    for k in range(n):
        rho[idx(0, k), idx(0, k)] += 0.5 * comb(n, k) * (tt ** k) * (rr ** (n - k))
    return DensityMatrix(rho, 2, dim_b)


def noon_eigenvalues(params: NoonChannelParams) -> np.ndarray:
    """Nonzero-or-structural spectrum of the lossy state, descending.

    One eigenvalue (1 + T^n)/2 from the coherent block and one binomial
    weight per lost-photon count; the remaining dim - (n+1) eigenvalues of
    the full matrix are exact zeros and are not listed here.
    """
    n = params.n
    tt = abs(params.t) ** 2
    rr = abs(params.r) ** 2
    vals = [0.5 * (1.0 + tt ** n)]
    vals += [0.5 * comb(n, k) * (tt ** k) * (rr ** (n - k)) for k in range(n)]
    return np.sort(np.asarray(vals, dtype=float))[::-1]


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def density_to_json(rho: DensityMatrix) -> dict:
    """JSON-serializable dict for a density matrix."""
    return {
        "dimA": rho.dim_a,
        "dimB": rho.dim_b,
        "re": rho.matrix.real.tolist(),
        "im": rho.matrix.imag.tolist(),
    }


def matrix_from_json(data: dict) -> tuple:
    """Decode (matrix, dim_a, dim_b) from the JSON dict, without validation.

    Shape and key errors raise; state-quality checks are left to
    :func:`validation_report` or the DensityMatrix constructor so a caller
    can report them instead of failing fast.
    """
    if not isinstance(data, dict):
        raise InvalidInputError("density JSON must be an object")
    for key in ("dimA", "dimB", "re", "im"):
        if key not in data:
            raise InvalidInputError(f"density JSON missing key '{key}'")
    try:
        dim_a = int(data["dimA"])
        dim_b = int(data["dimB"])
    except (TypeError, ValueError):
        raise InvalidInputError("dimA and dimB must be integers")
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data["im"], dtype=float)
    if re.shape != im.shape:
        raise DimensionMismatchError(
            f"re has shape {re.shape} but im has shape {im.shape}"
        )
    m = re + 1j * im
    dim = dim_a * dim_b
    if m.ndim != 2 or m.shape != (dim, dim):
        raise DimensionMismatchError(
            f"matrix shape {m.shape} does not match dimA*dimB = {dim}"
        )
    return m, dim_a, dim_b


def density_from_json(data: dict) -> DensityMatrix:
    """Decode and fully validate a density matrix from its JSON dict."""
    m, dim_a, dim_b = matrix_from_json(data)
    return DensityMatrix(m, dim_a, dim_b)


def load_matrix(path) -> tuple:
    """Read (matrix, dim_a, dim_b) from a JSON file, without validation."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"cannot parse {path}: {exc}") from exc
    return matrix_from_json(data)


def load_density(path) -> DensityMatrix:
    """Read and validate a density matrix from a JSON file."""
    m, dim_a, dim_b = load_matrix(path)
    return DensityMatrix(m, dim_a, dim_b)


def save_density(rho: DensityMatrix, path) -> None:
    """Write a density matrix to a JSON file."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(density_to_json(rho), fh)
        fh.write("\n")
