"""Security thresholds for qudit quantum key distribution."""

from .bounds import (
    BoundKind,
    ThresholdResult,
    scan_curves,
    threshold,
    threshold_all_bases,
    threshold_coherent,
    threshold_two_bases,
)
from .cloner import (
    AmplitudeMatrix,
    ClonerKind,
    ClonerParams,
    FidelityReport,
    amplitude_matrix,
    eve_params,
    fidelities,
    fourier_dual_amplitudes,
    two_basis_optimal,
    universal_from_F,
)
from .errors import (
    DimensionError,
    DomainError,
    PreconditionError,
    QuditQKDError,
    SolverError,
    UndefinedConditionalError,
)
from .infotheory import (
    InfoPoint,
    Protocol,
    ck_rate_lower,
    eve_info_all_bases,
    eve_info_two_bases,
    hall_bound,
    info_symmetric,
)

__version__ = "0.1.0"
