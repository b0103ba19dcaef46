"""Truncated number-phase numerics.

Canonical phase effects on Fock windows, their torus (position/momentum)
counterparts, Wasserstein-2 errors on the circle and the integers,
finite-section ground energies and the joint-measurement error bounds built
from them.
"""

from .errors import (
    BoundInapplicableError,
    InvalidInputError,
    InvalidPartitionError,
    NumericalConsistencyError,
    NumphaseError,
    OutOfWindowError,
    SingularMatrixError,
)
from .linalg import (
    SpectralDecomposition,
    eig_hermitian,
    inverse_pd,
    is_psd,
    min_eigenvalue,
    operator_norm,
)
from .mu_region import (
    BoundaryCurve,
    ErrorPoint,
    KernelJoint,
    embed_joint_to_z,
    error_sum_check,
    kernel_joint_phase_error_bounds,
    margin_errors_from_sigma,
    strict_subset_evidence,
    trace_boundary,
)
from .observables import (
    ArcSet,
    DensityState,
    FockWindow,
    TorusWindow,
    angle_margin,
    fourier_margin,
    moment_operator,
    number_projection,
    phase_effect,
    phase_shift_conjugate,
    second_phase_moment,
    smear_number,
    smear_phase,
    state_number_distribution,
    state_phase_distribution,
    torus_p2,
    torus_position_effect,
    torus_q2,
)
from .spectral import (
    GroundStateReport,
    LenardReport,
    complementarity_decay,
    finite_section_ground,
    lenard_bound,
    max_scalar_below,
    oscillator_fock_ground,
    oscillator_torus_ground,
    shift_compress,
)
from .transport import (
    ProbCircle,
    ProbInt,
    second_moment_circle,
    second_moment_int,
    smearing_error_number,
    smearing_error_phase,
    w2_circle,
    w2_integers,
)

__version__ = "0.1.0"
