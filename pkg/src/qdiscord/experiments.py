"""Deterministic dataset pipelines behind the package's three figures.

Each pipeline has a frozen config, a ``run_*`` function returning plain
rows, and a ``write_*`` wrapper that also produces the CSV file plus a
``<csv>.json`` sidecar recording the exact configuration and package
version. Identical configs give byte-identical files.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .discord import (
    MeasurementSpectrum,
    derive_child_seeds,
    min_uncertainty_assignment,
    scan_uncertainty,
)
from .errors import DimensionMismatchError, InvalidInputError
from .metrology import local_quantum_uncertainty, negativity, qfi_noon_closed
from .states import (
    DensityMatrix,
    NoonChannelParams,
    PureBipartiteState,
    noon_lossy_density,
)
from .tables import write_csv, write_sidecar
from .version import __version__

_SIMPLEX_TOL = 1e-12


@dataclass(frozen=True)
class Fig1Config:
    """Scan of Q and U over random measurements for Schmidt-diagonal states.

    For dim_a = 2 the state at grid value s1 has weights (s1, 1 - s1); for
    dim_a = 3 the weights are (s1, s2, 1 - s1 - s2) with a fixed s2. Each
    grid point gets its own derived master seed, so rows are reproducible
    point by point.
    """

    dim_a: int
    s1_grid: tuple
    s2: float = None
    spectrum: MeasurementSpectrum = None
    samples: int = 10000
    seed: int = 0

    def __post_init__(self):
        dim_a = int(self.dim_a)
        if dim_a not in (2, 3):
            raise InvalidInputError(f"dim_a must be 2 or 3, got {dim_a}")
        grid = tuple(float(s) for s in self.s1_grid)
        if not grid:
            raise InvalidInputError("s1_grid must be non-empty")
        for s1 in grid:
            if not 0.0 <= s1 <= 1.0:
                raise InvalidInputError(f"s1 values must lie in [0, 1], got {s1}")
        s2 = self.s2
        if dim_a == 2:
            if s2 is not None:
                raise InvalidInputError("s2 only applies to dim_a = 3")
        else:
            if s2 is None:
                raise InvalidInputError("dim_a = 3 needs a fixed s2")
            s2 = float(s2)
            if not 0.0 <= s2 <= 1.0:
                raise InvalidInputError(f"s2 must lie in [0, 1], got {s2}")
            for s1 in grid:
                if s1 + s2 > 1.0 + _SIMPLEX_TOL:
                    raise InvalidInputError(
                        f"s1 + s2 = {s1 + s2:.12g} exceeds 1 at s1 = {s1}"
                    )
        spectrum = self.spectrum
        if spectrum is None:
            spectrum = MeasurementSpectrum.default(dim_a)
        elif not isinstance(spectrum, MeasurementSpectrum):
            spectrum = MeasurementSpectrum(tuple(spectrum))
        if spectrum.size != dim_a:
            raise DimensionMismatchError(
                f"spectrum has {spectrum.size} values for dim_a = {dim_a}"
            )
        if int(self.samples) < 1:
            raise InvalidInputError(f"samples must be >= 1, got {self.samples}")
        object.__setattr__(self, "dim_a", dim_a)
        object.__setattr__(self, "s1_grid", grid)
        object.__setattr__(self, "s2", s2)
        object.__setattr__(self, "spectrum", spectrum)
        object.__setattr__(self, "samples", int(self.samples))
        object.__setattr__(self, "seed", int(self.seed))

    def probabilities(self, s1: float) -> np.ndarray:
        if self.dim_a == 2:
            p = np.array([s1, 1.0 - s1])
        else:
            p = np.array([s1, self.s2, 1.0 - s1 - self.s2])
        return np.clip(p, 0.0, None)

    def to_dict(self) -> dict:
        return {
            "command": "fig1",
            "dim_a": self.dim_a,
            "s1_grid": list(self.s1_grid),
            "s2": self.s2,
            "spectrum": list(self.spectrum.values),
            "samples": self.samples,
            "seed": self.seed,
            "version": __version__,
        }


def run_fig1(config: Fig1Config) -> list:
    """Rows (s1, basis seed, Q, U), one per sampled measurement."""
    point_seeds = derive_child_seeds(config.seed, len(config.s1_grid))
    rows = []
    for s1, point_seed in zip(config.s1_grid, point_seeds):
        state = PureBipartiteState.from_probabilities(config.probabilities(s1))
        rho = DensityMatrix.from_pure(state)
        scan = scan_uncertainty(
            rho, config.spectrum, config.samples, int(point_seed)
        )
        for seed, q, u in zip(
            scan.seeds.tolist(), scan.q_values.tolist(), scan.u_values.tolist()
        ):
            rows.append((s1, seed, q, u))
    return rows


def write_fig1(config: Fig1Config, path) -> list:
    rows = run_fig1(config)
    write_csv(path, ("s1", "seed", "Q", "U"), rows)
    write_sidecar(path, config.to_dict())
    return rows


@dataclass(frozen=True)
class Fig2Config:
    """Optimal-assignment region map over the three-outcome simplex.

    The grid covers all (s1, s2) with s1, s2 on a linspace over [0, 1] and
    s1 + s2 <= 1, with s3 = 1 - s1 - s2. No ordering between the weights is
    imposed; the label regions tile the full simplex.
    """

    spectrum: MeasurementSpectrum
    resolution: int = 200

    def __post_init__(self):
        spectrum = self.spectrum
        if not isinstance(spectrum, MeasurementSpectrum):
            spectrum = MeasurementSpectrum(tuple(spectrum))
        if spectrum.size != 3:
            raise DimensionMismatchError(
                f"region map needs a 3-value spectrum, got {spectrum.size}"
            )
        if int(self.resolution) < 2:
            raise InvalidInputError(
                f"resolution must be >= 2, got {self.resolution}"
            )
        object.__setattr__(self, "spectrum", spectrum)
        object.__setattr__(self, "resolution", int(self.resolution))

    def to_dict(self) -> dict:
        return {
            "command": "fig2",
            "spectrum": list(self.spectrum.values),
            "resolution": self.resolution,
            "version": __version__,
        }


def run_fig2(config: Fig2Config) -> list:
    """Rows (s1, s2, label); label is the optimal assignment as digits.

    Digit j of the label is the spectrum index assigned to weight slot j,
    e.g. "021" places values (v0, v2, v1) on (s1, s2, s3).
    """
    grid = np.linspace(0.0, 1.0, config.resolution)
    rows = []
    for s1 in grid:
        for s2 in grid:
            if s1 + s2 > 1.0 + _SIMPLEX_TOL:
                continue
            s3 = max(1.0 - s1 - s2, 0.0)
            result = min_uncertainty_assignment(
                np.array([s1, s2, s3]), config.spectrum
            )
            label = "".join(str(i) for i in result.assignment)
            rows.append((float(s1), float(s2), label))
    return rows


def write_fig2(config: Fig2Config, path) -> list:
    rows = run_fig2(config)
    write_csv(path, ("s1", "s2", "assignment"), rows)
    write_sidecar(path, config.to_dict())
    return rows


class Fig4Result(NamedTuple):
    """Fisher-information / discord / negativity sweep over transmittance."""

    rows: list
    slope: float
    max_residual: float


def run_fig4(n: int, t2_grid) -> Fig4Result:
    """Rows (t2, F, DG, negativity) plus the fitted F-vs-DG slope.

    DG is the computed local quantum uncertainty of the lossy state. The
    slope of F against DG recovers n^2 wherever the proportionality
    F = DG * n^2 holds; ``max_residual`` is the largest pointwise deviation
    from it on the grid.
    """
    grid = [float(t2) for t2 in np.asarray(t2_grid, dtype=float).ravel()]
    if len(grid) < 2:
        raise InvalidInputError("t2 grid needs at least two points")
    rows = []
    for t2 in grid:
        params = NoonChannelParams.from_transmittance(n, t2)
        rho = noon_lossy_density(params)
        f = qfi_noon_closed(params)
        dg = local_quantum_uncertainty(rho)
        rows.append((t2, f, dg, negativity(rho)))
    dg_values = np.array([row[2] for row in rows])
    f_values = np.array([row[1] for row in rows])
    slope = float(np.polyfit(dg_values, f_values, 1)[0])
    max_residual = float(np.max(np.abs(f_values - dg_values * n * n)))
    return Fig4Result(rows, slope, max_residual)


def write_fig4(n: int, t2_grid, path) -> Fig4Result:
    result = run_fig4(n, t2_grid)
    write_csv(path, ("t2", "F", "DG", "negativity"), result.rows)
    write_sidecar(
        path,
        {
            "command": "fig4",
            "n": int(n),
            "t2_grid": [row[0] for row in result.rows],
            "version": __version__,
        },
    )
    return result
