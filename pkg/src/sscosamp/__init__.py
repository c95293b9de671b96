"""Signal-space CoSaMP over overcomplete DFT dictionaries."""
from ._core import COMPILED
from .dictionary import Dictionary, SupportSet, build, cyclic_distance, envelope
from .errors import (
    DimensionError,
    EnumerationSizeError,
    HypothesisViolatedError,
    IndexRangeError,
    InfeasibleSeparationError,
    MismatchedInputError,
    SingularSubmatrixError,
    SolverNonconvergenceError,
    ZeroSignalError,
)
from .harness import ExperimentSpec, ResultTable, run
from .projections import (
    BACKENDS,
    ProjectionConfig,
    ProjectionOutcome,
    basis_pursuit,
    near_optimality_ratios,
    project,
    project_cosamp,
    project_l1,
    project_omp,
    project_onto_support,
    project_oracle,
)
from .recovery import RecoveryConfig, SSCoSaMPState, constrained_least_squares, recover
from .sensing import (
    RecoveryReport,
    SensingInstance,
    SparseRepresentation,
    add_noise,
    gaussian_matrix,
    gen_clustered,
    gen_separated,
    load_instance,
    make_instance,
    snr_db,
)
from .separation import (
    DominanceReport,
    SeparationProfile,
    b_ratio,
    erc_constant,
    eta_bound,
    eta_prime_bound,
    omp_threshold,
    rip_bound,
    well_separated,
)

__version__ = "0.1.0"
