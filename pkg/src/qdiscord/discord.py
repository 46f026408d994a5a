"""Uncertainty-based correlation measures for bipartite states.

A von Neumann measurement on subsystem A is represented by the unitary
whose columns are the measured directions. Two numbers are attached to a
measurement: the spectrum-free measurement uncertainty Q, built from the
off-diagonal blocks of sqrt(rho) in the measurement basis, and the
observable uncertainty U, which additionally weights each block pair by
the squared gap of the eigenvalues assigned to the two directions.
Minimizing either quantity over all measurements (exactly for a qubit on
side A, by seeded sampling otherwise) yields a discord-like measure of
quantum correlations.
"""

from dataclasses import dataclass
from itertools import permutations
from math import sqrt
from typing import NamedTuple

import numpy as np

from .errors import (
    DegenerateSpectrumError,
    DimensionMismatchError,
    InvalidInputError,
    NotPSDError,
)
from .linalg import haar_unitary, hermitian_eig, psd_sqrt, require_hermitian
from .states import (
    DensityMatrix,
    PureBipartiteState,
    SchmidtDecomposition,
    schmidt_decompose,
)
from .tables import write_csv

#: Assigned eigenvalues closer than this are rejected as indistinguishable.
MIN_SPECTRUM_GAP = 1e-9

#: Uncertainty values in [-NEGATIVE_UNCERTAINTY_TOL, 0) are roundoff and
#: clamped to zero; anything more negative signals a corrupt input.
NEGATIVE_UNCERTAINTY_TOL = 1e-12

#: Default observable spectrum for a qubit measurement. The gap is sqrt(2),
#: so the pair weight (gap^2)/2 is exactly 1 and U coincides with Q on
#: two-dimensional A.
DEFAULT_QUBIT_SPECTRUM = (sqrt(2.0) / 2.0, -sqrt(2.0) / 2.0)

#: Default observable spectrum for a qutrit measurement.
DEFAULT_QUTRIT_SPECTRUM = (4.0, 3.0, 2.0)

_PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_PAULIS = (_PAULI_X, _PAULI_Y, _PAULI_Z)


def _clamp_uncertainty(value: float, what: str = "uncertainty") -> float:
    if value < -NEGATIVE_UNCERTAINTY_TOL:
        raise NotPSDError(
            f"{what} evaluated to {value:.3e}, beyond roundoff tolerance"
        )
    return 0.0 if value < 0.0 else value


@dataclass(frozen=True)
class MeasurementSpectrum:
    """Eigenvalues assigned to the outcomes of a measurement on A."""

    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in np.asarray(self.values, dtype=float).ravel())
        if len(vals) < 2:
            raise InvalidInputError("spectrum needs at least two eigenvalues")
        if not all(np.isfinite(vals)):
            raise InvalidInputError("spectrum contains non-finite values")
        for j in range(len(vals)):
            for k in range(j + 1, len(vals)):
                if abs(vals[j] - vals[k]) <= MIN_SPECTRUM_GAP:
                    raise DegenerateSpectrumError(
                        f"eigenvalues {vals[j]} and {vals[k]} differ by less than "
                        f"{MIN_SPECTRUM_GAP:.0e}"
                    )
        object.__setattr__(self, "values", vals)

    @property
    def size(self) -> int:
        return len(self.values)

    def gap_squared_matrix(self) -> np.ndarray:
        """Matrix of (v_j - v_k)^2 over all index pairs."""
        v = np.asarray(self.values)
        d = v[:, None] - v[None, :]
        return d * d

    @classmethod
    def default(cls, dim_a: int):
        """Package default spectrum for a measurement on a space of size dim_a."""
        if dim_a == 2:
            return cls(DEFAULT_QUBIT_SPECTRUM)
        if dim_a == 3:
            return cls(DEFAULT_QUTRIT_SPECTRUM)
        raise InvalidInputError(
            f"no default spectrum for dim_a = {dim_a}; pass one explicitly"
        )


def _as_spectrum(spectrum) -> MeasurementSpectrum:
    if isinstance(spectrum, MeasurementSpectrum):
        return spectrum
    return MeasurementSpectrum(tuple(spectrum))


#: Max absolute entry of (U^dagger U - I) accepted as unitary.
UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class VonNeumannBasis:
    """Orthonormal measurement basis on subsystem A, stored as a unitary.

    Column j of ``unitary`` is the j-th measured direction.
    """

    unitary: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.unitary, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise DimensionMismatchError(f"basis must be square, got shape {u.shape}")
        dev = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
        if dev > UNITARITY_TOL:
            raise InvalidInputError(
                f"basis is not unitary: max |U^dagger U - I| = {dev:.3e}"
            )
        u = u.copy()
        u.setflags(write=False)
        object.__setattr__(self, "unitary", u)

    @property
    def dim(self) -> int:
        return self.unitary.shape[0]

    def projector(self, j: int) -> np.ndarray:
        """Rank-1 projector onto the j-th measured direction."""
        if not 0 <= j < self.dim:
            raise IndexError(f"direction index {j} out of range for dim {self.dim}")
        col = self.unitary[:, j]
        return np.outer(col, col.conj())

    @classmethod
    def computational(cls, dim: int):
        return cls(np.eye(int(dim), dtype=complex))

    @classmethod
    def haar_random(cls, dim: int, rng: np.random.Generator):
        return cls(haar_unitary(dim, rng))

    @classmethod
    def from_seed(cls, dim: int, seed: int):
        """Reproducible Haar-random basis from an integer seed.

        This is the inverse of the seed bookkeeping in the scan routines: a
        recorded seed rebuilds exactly the basis that produced a scan row.
        """
        return cls(haar_unitary(dim, np.random.default_rng(int(seed))))


def _require_state(rho) -> DensityMatrix:
    if not isinstance(rho, DensityMatrix):
        raise InvalidInputError(
            "expected a DensityMatrix (wrap raw arrays so dimensions are explicit)"
        )
    return rho


def _sqrt_blocks(rho: DensityMatrix) -> np.ndarray:
    """sqrt(rho) reshaped to (dim_a, dim_b, dim_a, dim_b)."""
    s = psd_sqrt(rho.matrix, "rho")
    return s.reshape(rho.dim_a, rho.dim_b, rho.dim_a, rho.dim_b)


def _pair_trace_matrix(s4: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Matrix of Tr[B_jk B_kj] over direction pairs, diagonal zeroed.

    B_jk is the B-space block <u_j| sqrt(rho) |u_k> in the measurement
    basis with columns u_j.
    """
    t1 = np.tensordot(u.conj().T, s4, axes=(1, 0))
    t2 = np.tensordot(t1, u, axes=(2, 0))
    blocks = t2.transpose(0, 1, 3, 2)
    v = np.einsum("jbkd,kdjb->jk", blocks, blocks).real
    np.fill_diagonal(v, 0.0)
    return v


def _check_basis(rho: DensityMatrix, basis: VonNeumannBasis) -> None:
    if basis.dim != rho.dim_a:
        raise DimensionMismatchError(
            f"basis dimension {basis.dim} does not match dim_a = {rho.dim_a}"
        )


def skew_information(rho, observable) -> float:
    """Skew information of the state with respect to a Hermitian observable.

    Defined as Tr(rho M^2) - Tr(sqrt(rho) M sqrt(rho) M); zero exactly when
    the observable commutes with the state, and bounded by the variance.
    """
    rho = _require_state(rho)
    m = require_hermitian(observable, name="observable")
    if m.shape[0] != rho.dim:
        raise DimensionMismatchError(
            f"observable dimension {m.shape[0]} does not match state dimension {rho.dim}"
        )
    s = psd_sqrt(rho.matrix, "rho")
    sm = s @ m
    val = np.trace(rho.matrix @ m @ m).real - np.trace(sm @ sm).real
    return _clamp_uncertainty(float(val), "skew information")


def uncertainty_term(rho, basis: VonNeumannBasis, j: int, k: int) -> float:
    """B-traced uncertainty contribution of one direction pair.

    For j != k this is Tr_B[B_jk B_kj] with B_jk = <u_j|sqrt(rho)|u_k>.
    For j == k it is the per-projector quantity
    Tr_B[<u_j|rho|u_j> - B_jj^2], which for a two-dimensional A equals the
    off-diagonal term; that identity is what makes Q basis-block
    computable.
    """
    rho = _require_state(rho)
    _check_basis(rho, basis)
    da, db = rho.dim_a, rho.dim_b
    for idx in (j, k):
        if not 0 <= idx < da:
            raise IndexError(f"direction index {idx} out of range for dim_a = {da}")
    s4 = _sqrt_blocks(rho)
    uj = basis.unitary[:, j]
    uk = basis.unitary[:, k]
    b_jk = np.einsum("a,abcd,c->bd", uj.conj(), s4, uk)
    if j != k:
        b_kj = np.einsum("a,abcd,c->bd", uk.conj(), s4, uj)
        val = np.trace(b_jk @ b_kj).real
    else:
        r4 = rho.matrix.reshape(da, db, da, db)
        rho_jj = np.einsum("a,abcd,c->bd", uj.conj(), r4, uj)
        val = np.trace(rho_jj - b_jk @ b_jk).real
    return _clamp_uncertainty(float(val), "uncertainty term")


def measurement_uncertainty(rho, basis: VonNeumannBasis) -> float:
    """Total quantum uncertainty Q of a von Neumann measurement on A.

    Q = 2 * sum_{j<k} Tr_B[B_jk B_kj]; it vanishes exactly on
    classical-quantum states measured in their classical basis.
    """
    rho = _require_state(rho)
    _check_basis(rho, basis)
    v = _pair_trace_matrix(_sqrt_blocks(rho), basis.unitary)
    return _clamp_uncertainty(float(v.sum()), "measurement uncertainty")


def observable_uncertainty(rho, basis: VonNeumannBasis, spectrum) -> float:
    """Eigenvalue-weighted uncertainty U of a measured observable.

    U = sum_{j<k} (v_j - v_k)^2 Tr_B[B_jk B_kj] where v_j is the spectrum
    value assigned to direction j. Equals the skew information of the
    observable sum_j v_j |u_j><u_j| tensored with the identity on B.
    """
    rho = _require_state(rho)
    _check_basis(rho, basis)
    spectrum = _as_spectrum(spectrum)
    if spectrum.size != rho.dim_a:
        raise DimensionMismatchError(
            f"spectrum has {spectrum.size} values for dim_a = {rho.dim_a}"
        )
    v = _pair_trace_matrix(_sqrt_blocks(rho), basis.unitary)
    val = 0.5 * float((spectrum.gap_squared_matrix() * v).sum())
    return _clamp_uncertainty(val, "observable uncertainty")


# ---------------------------------------------------------------------------
# Pure-state closed forms
# ---------------------------------------------------------------------------


def _as_probabilities(state) -> np.ndarray:
    """Schmidt probability weights from any of the accepted state forms."""
    if isinstance(state, SchmidtDecomposition):
        return state.probabilities
    if isinstance(state, PureBipartiteState):
        return schmidt_decompose(state).probabilities
    p = np.asarray(state, dtype=float)
    if p.ndim != 1 or p.size < 2:
        raise InvalidInputError(
            "expected Schmidt data or a 1-D probability sequence of length >= 2"
        )
    if np.any(p < -NEGATIVE_UNCERTAINTY_TOL):
        raise InvalidInputError(f"probabilities must be nonnegative, got {p.tolist()}")
    if abs(p.sum() - 1.0) > 1e-9:
        raise InvalidInputError(f"probabilities must sum to 1, got {p.sum():.12g}")
    return np.clip(p, 0.0, None)


def geometric_discord_pure(state) -> float:
    """Minimal measurement uncertainty of a pure bipartite state.

    For pure states the minimum of Q over measurements is attained in the
    Schmidt basis and equals 2 * sum_{j<k} p_j p_k = 1 - sum_j p_j^2 with
    p the Schmidt probabilities. Accepts a SchmidtDecomposition, a
    PureBipartiteState, or the probabilities directly.
    """
    p = _as_probabilities(state)
    return _clamp_uncertainty(float(1.0 - np.sum(p * p)))


class AssignmentResult(NamedTuple):
    """Minimal pure-state observable uncertainty and its optimal assignment.

    ``assignment[j]`` is the index into the spectrum of the eigenvalue
    placed on weight slot j, with slots in the order the weights were
    given (descending when they come from a Schmidt decomposition).
    """

    value: float
    assignment: tuple


def min_uncertainty_assignment(state, spectrum) -> AssignmentResult:
    """Minimize the pure-state observable uncertainty over eigenvalue orderings.

    In the Schmidt basis U reduces to sum_{j<k} (a_j - a_k)^2 p_j p_k where
    a is a permutation of the spectrum; the minimum over the measurement
    then only requires searching the permutations. Ties are resolved toward
    the lexicographically smallest assignment tuple, which makes region
    labels on probability grids deterministic.
    """
    p = _as_probabilities(state)
    spectrum = _as_spectrum(spectrum)
    if spectrum.size != p.size:
        raise DimensionMismatchError(
            f"spectrum has {spectrum.size} values for {p.size} Schmidt weights"
        )
    vals = spectrum.values
    best_cost = np.inf
    best_perm = None
    for perm in permutations(range(spectrum.size)):
        cost = 0.0
        for j in range(p.size):
            for k in range(j + 1, p.size):
                gap = vals[perm[j]] - vals[perm[k]]
                cost += gap * gap * p[j] * p[k]
        if cost < best_cost:
            best_cost = cost
            best_perm = perm
    return AssignmentResult(float(best_cost), best_perm)


# ---------------------------------------------------------------------------
# Qubit-side closed forms
# ---------------------------------------------------------------------------


def _correlation_matrix(rho: DensityMatrix) -> np.ndarray:
    """3x3 real symmetric matrix Tr[sqrt(rho) (s_i x I) sqrt(rho) (s_j x I)]
    over the Pauli operators on A."""
    s = psd_sqrt(rho.matrix, "rho")
    eye_b = np.eye(rho.dim_b, dtype=complex)
    ops = [np.kron(p, eye_b) for p in _PAULIS]
    w = np.empty((3, 3))
    mid = [s @ op @ s for op in ops]
    for i in range(3):
        for j in range(3):
            w[i, j] = np.trace(mid[i] @ ops[j]).real
    return 0.5 * (w + w.T)


def local_quantum_uncertainty(rho) -> float:
    """Minimal observable uncertainty on a qubit A with a +/-1 spectrum.

    Closed form: 1 - (largest eigenvalue of the 3x3 Pauli correlation
    matrix). Only defined for dim_a = 2, where the measured observable is a
    unit Bloch direction and the minimization is exact.
    """
    rho = _require_state(rho)
    if rho.dim_a != 2:
        raise DimensionMismatchError(
            f"closed form requires dim_a = 2, got dim_a = {rho.dim_a}"
        )
    w = hermitian_eig(_correlation_matrix(rho), "correlation matrix").eigenvalues
    return _clamp_uncertainty(float(1.0 - w[-1]), "local quantum uncertainty")


def geometric_discord_qubit(rho) -> float:
    """Minimal measurement uncertainty Q for a qubit on side A.

    For dim_a = 2 every observable spectrum gives U = (gap^2 / 2) * Q at
    fixed measurement, so the minimizers coincide and
    min Q = local_quantum_uncertainty / 2 exactly (the +/-1 spectrum has
    gap^2 / 2 = 2).
    """
    return 0.5 * local_quantum_uncertainty(rho)


# ---------------------------------------------------------------------------
# Seeded measurement scans
# ---------------------------------------------------------------------------


def derive_child_seeds(master_seed: int, count: int) -> np.ndarray:
    """Stream of per-sample seeds derived from one master seed.

    Pure function of (master_seed, index): sample i always receives the
    same seed no matter how the scan is chunked, so recorded seeds
    reproduce their basis via :meth:`VonNeumannBasis.from_seed`.
    """
    if count < 1:
        raise InvalidInputError(f"count must be >= 1, got {count}")
    ss = np.random.SeedSequence(int(master_seed))
    return ss.generate_state(int(count), dtype=np.uint64)


@dataclass(frozen=True)
class UncertaintyScan:
    """Record of a seeded random-measurement scan.

    ``q_values[i]`` is the measurement uncertainty for the basis rebuilt
    from ``seeds[i]``; ``u_values`` is present when a spectrum was scanned.
    The optimized quantity is U when a spectrum is present, Q otherwise.
    """

    dim_a: int
    dim_b: int
    master_seed: int
    spectrum: object
    seeds: np.ndarray
    q_values: np.ndarray
    u_values: object

    @property
    def samples(self) -> int:
        return int(self.seeds.size)

    @property
    def values(self) -> np.ndarray:
        """The scanned objective: U if a spectrum was given, else Q."""
        return self.q_values if self.u_values is None else self.u_values

    @property
    def minimum(self) -> float:
        return float(self.values.min())

    @property
    def maximum(self) -> float:
        return float(self.values.max())

    @property
    def argmin_seed(self) -> int:
        return int(self.seeds[int(np.argmin(self.values))])

    def to_csv(self, path) -> None:
        """Write one row per sample: seed,Q[,U]."""
        if self.u_values is None:
            header = ("seed", "Q")
            rows = zip(self.seeds.tolist(), self.q_values.tolist())
        else:
            header = ("seed", "Q", "U")
            rows = zip(
                self.seeds.tolist(), self.q_values.tolist(), self.u_values.tolist()
            )
        write_csv(path, header, rows)


def scan_uncertainty(rho, spectrum=None, samples: int = 1000, master_seed: int = 0) -> UncertaintyScan:
    """Evaluate Q (and U, if a spectrum is given) over seeded random bases.

    Bases are Haar random on subsystem A, one per derived child seed.
    Results are deterministic in (rho, spectrum, samples, master_seed) and
    independent of evaluation order.
    """
    rho = _require_state(rho)
    if samples < 1:
        raise InvalidInputError(f"samples must be >= 1, got {samples}")
    gaps = None
    if spectrum is not None:
        spectrum = _as_spectrum(spectrum)
        if spectrum.size != rho.dim_a:
            raise DimensionMismatchError(
                f"spectrum has {spectrum.size} values for dim_a = {rho.dim_a}"
            )
        gaps = spectrum.gap_squared_matrix()
    s4 = _sqrt_blocks(rho)
    seeds = derive_child_seeds(master_seed, samples)
    q_values = np.empty(samples)
    u_values = np.empty(samples) if gaps is not None else None
    for i, seed in enumerate(seeds):
        u = haar_unitary(rho.dim_a, np.random.default_rng(int(seed)))
        v = _pair_trace_matrix(s4, u)
        q_values[i] = _clamp_uncertainty(float(v.sum()), "measurement uncertainty")
        if gaps is not None:
            u_values[i] = _clamp_uncertainty(
                0.5 * float((gaps * v).sum()), "observable uncertainty"
            )
    return UncertaintyScan(
        rho.dim_a, rho.dim_b, int(master_seed), spectrum, seeds, q_values, u_values
    )


class UncertaintyBounds(NamedTuple):
    """Sampled bounds on an uncertainty minimization."""

    minimum: float
    maximum: float
    argmin_seed: int


def minimize_uncertainty(rho, spectrum=None, samples: int = 1000, master_seed: int = 0) -> UncertaintyBounds:
    """Sampled minimum and maximum of Q (or U with a spectrum) over bases.

    Returns the bounds plus the child seed of the best basis, which
    :meth:`VonNeumannBasis.from_seed` turns back into the measurement. No
    convergence claim is made for dim_a >= 3; the result is an upper bound
    on the true minimum that improves with ``samples``.
    """
    scan = scan_uncertainty(rho, spectrum, samples, master_seed)
    return UncertaintyBounds(scan.minimum, scan.maximum, scan.argmin_seed)
