"""Pulsed squeezed-vacuum generation in photonic ring cavities.

Frequency-domain model of parametric down-conversion in a two-mode ring
resonator driven by a pulsed pump: characteristic squeezing modes via
Bloch-Messiah factorization, oscillation thresholds from the conjugate
gain criterion, homodyne observables, and local-oscillator shaping.
"""

__version__ = "0.1.0"

from .decomposition import (
    ModeShape,
    SqueezingDecomposition,
    bloch_messiah,
    characteristic_modes,
    mode_shape_from_vector,
    takagi,
)
from .errors import (
    AmbiguousFwhmError,
    AtOrAboveThresholdError,
    CoverageError,
    DecompositionUnreliableError,
    GridMismatchError,
    InvalidArgumentError,
    UndefinedModeNumberError,
)
from .grids import (
    CavityParams,
    FrequencyGrid,
    PumpField,
    TemporalProfile,
    cw_pump_input,
    gaussian_pump_input,
    intracavity_pump,
    make_grid,
    pump_grid_for,
    temporal_profile,
)
from .loshape import (
    FilterOptimum,
    LoConfig,
    OverlapResult,
    filtered_lo,
    measured_squeezing,
    optimize_filter,
    overlap,
)
from .matrices import (
    BlockMatrix,
    ScatteringMatrix,
    build_generator,
    core_scattering,
    factorized_io_blocks,
    io_matrix,
    stability_margin,
    symplectic_residual_of,
)
from .nondegenerate import (
    JointBlockMatrix,
    build_joint_generator,
    joint_max_gain,
    sector_weights,
)
from .observables import (
    GaussianMoments,
    HomodyneResult,
    SqueezeReport,
    effective_mode_number,
    homodyne_variance,
    mode_fwhm,
    output_moments,
    squeeze_report,
    squeezed_variance,
    squeezing_db,
)
from .pipeline import SqueezingRun, default_span, mode_span, run_squeezing
from .threshold import (
    ThresholdResult,
    max_gain,
    threshold_amplitude,
    threshold_power_ratio,
)
from .sweeps import RunConfig, Table

__all__ = [name for name in dir() if not name.startswith("_")]
