"""Uncertainty-based quantum correlation measures and interferometer metrology.

The package evaluates measurement-induced uncertainty measures of
bipartite quantum states (closed forms where they exist, seeded random
scans otherwise) and relates them to the phase-estimation power of an
N-photon interferometer with one lossy arm.
"""

from .discord import (
    AssignmentResult,
    MeasurementSpectrum,
    UncertaintyBounds,
    UncertaintyScan,
    VonNeumannBasis,
    derive_child_seeds,
    geometric_discord_pure,
    geometric_discord_qubit,
    local_quantum_uncertainty,
    measurement_uncertainty,
    min_uncertainty_assignment,
    minimize_uncertainty,
    observable_uncertainty,
    scan_uncertainty,
    skew_information,
    uncertainty_term,
)
from .errors import (
    DegenerateSpectrumError,
    DimensionMismatchError,
    EigensolverError,
    InvalidInputError,
    NotHermitianError,
    NotPSDError,
)
from .experiments import (
    Fig1Config,
    Fig2Config,
    Fig4Result,
    run_fig1,
    run_fig2,
    run_fig4,
    write_fig1,
    write_fig2,
    write_fig4,
)
from .linalg import (
    haar_unitary,
    hermitian_eig,
    partial_trace,
    partial_transpose,
    psd_sqrt,
    trace_norm,
)
from .metrology import (
    IdentityReport,
    IdentityRow,
    lqu_noon_closed,
    negativity,
    qfi_discord_identity_check,
    qfi_fidelity_estimate,
    qfi_noon_closed,
    qfi_noon_spectral,
    uhlmann_fidelity,
)
from .states import (
    DensityMatrix,
    NoonChannelParams,
    PureBipartiteState,
    SchmidtDecomposition,
    StateReport,
    density_from_json,
    density_to_json,
    load_density,
    noon_eigenvalues,
    noon_lossy_density,
    noon_tripartite,
    save_density,
    schmidt_decompose,
    validation_report,
)
from .version import __version__

__all__ = [
    "__version__",
    "AssignmentResult",
    "DegenerateSpectrumError",
    "DensityMatrix",
    "DimensionMismatchError",
    "EigensolverError",
    "Fig1Config",
    "Fig2Config",
    "Fig4Result",
    "IdentityReport",
    "IdentityRow",
    "InvalidInputError",
    "MeasurementSpectrum",
    "NoonChannelParams",
    "NotHermitianError",
    "NotPSDError",
    "PureBipartiteState",
    "SchmidtDecomposition",
    "StateReport",
    "UncertaintyBounds",
    "UncertaintyScan",
    "VonNeumannBasis",
    "density_from_json",
    "density_to_json",
    "derive_child_seeds",
    "geometric_discord_pure",
    "geometric_discord_qubit",
    "haar_unitary",
    "hermitian_eig",
    "load_density",
    "local_quantum_uncertainty",
    "lqu_noon_closed",
    "measurement_uncertainty",
    "min_uncertainty_assignment",
    "minimize_uncertainty",
    "negativity",
    "noon_eigenvalues",
    "noon_lossy_density",
    "noon_tripartite",
    "observable_uncertainty",
    "partial_trace",
    "partial_transpose",
    "psd_sqrt",
    "qfi_discord_identity_check",
    "qfi_fidelity_estimate",
    "qfi_noon_closed",
    "qfi_noon_spectral",
    "run_fig1",
    "run_fig2",
    "run_fig4",
    "save_density",
    "scan_uncertainty",
    "schmidt_decompose",
    "skew_information",
    "trace_norm",
    "uhlmann_fidelity",
    "uncertainty_term",
    "validation_report",
    "write_fig1",
    "write_fig2",
    "write_fig4",
]
