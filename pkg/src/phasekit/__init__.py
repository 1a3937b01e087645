"""Path-phase interference and Bohr-Sommerfeld quantization with a free action scale kappa."""

from .core import FringePattern, ModelParams, Path, QuantizationProblem, Rule, arc_length
from .errors import (
    BracketNotFound,
    DivergentAverage,
    EmptyList,
    EnergyBelowMinimum,
    EnergyNotBracketed,
    InvalidCharge,
    MismatchedEndpoints,
    NumericalError,
    OutOfSpan,
    ParseError,
    PathIntersectsSolenoidCore,
    PhaseKitError,
    TooFewPeaks,
    ValidationError,
    ZeroActionTarget,
)
from .fields import FieldSpec, GradientField, IdealSolenoid, NoField
from .interference import (
    ABGeometry,
    TwoSlitGeometry,
    ab_pattern,
    extract_kappa,
    fringe_spacing,
    pattern,
    two_slit_paths,
)
from .phase import (
    action_phase,
    amplitude,
    average_momentum,
    intensity,
    superpose,
    verify_momentum_relation,
)
from .potentials import CoulombCircular, Harmonic, LinearWell, Potential1D, Tabulated
from .quantization import (
    EnergyLevel,
    action_integral,
    hydrogen_circular_levels,
    quantize_level,
    turning_points,
)

__version__ = "0.1.0"
