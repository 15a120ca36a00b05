"""RC Cauer ladders, fractal ladders and their diffusion-equation counterparts."""

from .confrac import eval_cf, nest_cf, scale_cf_head
from .errors import (
    BandTooNarrow,
    DegenerateScaling,
    DivisionNearZero,
    FracLadderError,
    NoValidBand,
    NonFiniteSamples,
    NonGeometricLadder,
    NumericalError,
    PoleEncountered,
    SingularAtFrequency,
    ValidationError,
)
from .fracfit import FitReport, auto_band, check_identification_system, fit_power_law, predict_exponent
from .ladder import (
    DiffusionProfile,
    FractalParams,
    LadderSpec,
    ScalingFunction,
    generate_fractal,
    ladder_from_profile,
    profile_from_ladder,
    scaling_lambda,
)
from .pde import DiscreteDiffusionSystem, assemble, input_admittance, solve
from .transfer import (
    BodeTable,
    bode_sweep,
    functional_residual,
    g_eval,
    simplified_residual,
    transfer_cf,
    transfer_fractal,
    transfer_recursive,
    transfer_via_g,
)

__version__ = "0.1.0"
