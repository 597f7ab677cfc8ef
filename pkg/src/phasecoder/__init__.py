"""Phase-shifting angle coder.

Orientation angles of rotationally symmetric objects are awkward regression
targets: the raw angle jumps at the symmetry boundary even though the
object barely moves.  This package maps angles to phases on the unit
circle, samples them into short cosine codes that vary continuously, and
decodes them back with a least-squares fit.  A dual-frequency variant also
survives the quarter-turn ambiguity of square objects.  The `bench`
subpackage trains small regressors on synthetic oriented boxes to show the
effect; the `phasecoder` command exposes encoding, decoding, a property
suite, and the benchmark.
"""

from . import backend
from .coder import (
    HEADING_SYMMETRY,
    INDETERMINATE_EPS,
    RECT_SYMMETRY,
    SQUARE_SYMMETRY,
    IndeterminatePhaseError,
    SymmetryConfig,
    angle_to_phase,
    angular_distance,
    decode,
    encode,
    phase_to_angle,
    wrap_phase,
)
from .dual import (
    UnwrapResult,
    decode_dual,
    decode_dual_to_angle,
    encode_dual,
    split_dual,
)
from .head import LossWeights, angle_loss, squash, squash_grad, total_loss

__version__ = "0.1.0"

__all__ = [
    "backend",
    "SymmetryConfig",
    "RECT_SYMMETRY",
    "SQUARE_SYMMETRY",
    "HEADING_SYMMETRY",
    "INDETERMINATE_EPS",
    "IndeterminatePhaseError",
    "wrap_phase",
    "angle_to_phase",
    "phase_to_angle",
    "encode",
    "decode",
    "angular_distance",
    "UnwrapResult",
    "encode_dual",
    "decode_dual",
    "decode_dual_to_angle",
    "split_dual",
    "LossWeights",
    "squash",
    "squash_grad",
    "angle_loss",
    "total_loss",
    "__version__",
]
