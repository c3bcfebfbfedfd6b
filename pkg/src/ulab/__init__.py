"""Quantumness measures and entropic uncertainty tools for two-qubit states."""

from .backend import available_backends, backend_name, use_backend
from .errors import (
    BadDim,
    BadIndex,
    DegenerateObservable,
    DimMismatch,
    InvalidParams,
    NonHermitianInput,
    NotADistribution,
    NotPSD,
    OutOfRange,
    RankTooHigh,
    UlabError,
    Unphysical,
)
from .matcore import (
    hermitian_eig,
    kron,
    matrix_sqrt_psd,
    partial_trace,
    partial_transpose,
    pauli,
)
from .measures import (
    MeasureReport,
    classical_correlation_JA,
    concurrence,
    dissonance_rank2,
    eof,
    geometric_discord,
    geometric_discord_xstate,
    hellinger_check,
    lqu,
    lqu_xstate_closed_form,
    measure_report,
    mutual_information,
    negativity,
    optimal_local_observable,
    quantum_discord_DA,
    shannon_entropy,
    skew_information,
    von_neumann_entropy,
    w_matrix,
    xstate_w_diagonal,
)
from .optimize import (
    OptimizationResult,
    SweepTable,
    chi_sweep,
    conjecture_probe,
    maximize_gd_separable_x,
    maximize_lqu_bell_diagonal_separable,
    maximize_lqu_separable_x,
    noisy_sweep,
    parallel_map,
    region_sweep,
    solve_reduced_family,
)
from .states import (
    BellDiagonalParams,
    BlochForm,
    XStateParams,
    bell_diagonal,
    bell_state,
    chi_state,
    is_separable,
    load_state,
    maximally_mixed,
    noisy_star,
    purify_rank2,
    random_separable,
    rho_star,
    save_state,
    state_fingerprint,
    to_bloch,
    validate_density_matrix,
    werner,
    x_state,
)
from .uncertainty import (
    UncertaintyReport,
    berta_bound,
    complementarity,
    measured_conditional_entropy,
    pati_bound,
    uncertainty_gap,
)
from .verify import ClaimResult, run_claims

__version__ = "0.1.0"
