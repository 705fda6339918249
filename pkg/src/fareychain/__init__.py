"""Farey fraction spin chain in an external field: exact finite-size
thermodynamics, closed-form 1-D KDP comparison models, and the
renormalization-group predictions for the phase diagram.

Hot enumeration kernels run under numba when available, with a pure-numpy
fallback selected by FAREYCHAIN_BACKEND (see :mod:`fareychain.backend`).
"""

from .analysis import (
    BoundsReport,
    FitResult,
    MomentResult,
    extrapolate_f,
    farey_moments,
    fss_fit,
    moment_scaling_report,
    verify_bounds,
)
from .chain import (
    BETA_C,
    DEFAULT_ENUM_CAP,
    EnsembleParams,
    PartitionResult,
    ThermoPoint,
    config_energy,
    correlation,
    correlation_profile,
    direct_log_partition,
    free_energy_sequence,
    log_partition,
    thermo_point,
)
from .errors import (
    DegenerateFitError,
    EnumerationCapExceededError,
    ExactIntegerOverflowError,
    FareyChainError,
    NoRealRootError,
    PoleError,
)
from .farey import (
    MATRIX_A,
    MATRIX_B,
    FareyLevel,
    Matrix2,
    chain_traces_via_farey,
    farey_level,
    next_level,
    tilde,
    word_matrix,
)
from .kdp import (
    KdpParams,
    KdpPhase,
    KdpThermo,
    KdpVariant,
    kdp_discontinuities,
    kdp_free_energy,
    kdp_log_partition,
    kdp_phase_boundary,
)
from .rg import (
    FfscBoundary,
    MeanFieldConstants,
    RGConstants,
    RGState,
    discontinuities_ffsc,
    flow_closed_form,
    flow_integrate,
    matching_scale,
    mean_field_f,
    minimize_mean_field,
    ordered_f,
    phase_boundary_ffsc,
    singular_f_high,
)

__version__ = "0.1.0"
