"""Single-frequency phase coding of orientation angles.

An orientation that repeats every ``s`` radians (pi for a long-edge box
parameterization, pi/2 for squares, 2*pi for a unique heading) is mapped
onto the unit circle by ``phi = k * theta`` with ``k = 2*pi / s``.  The
phase is then sampled into an ``n_step``-element cosine code

    values[n-1] = cos(phi + 2*pi*n/n_step),   n = 1..n_step,

and recovered by a least-squares fit of a single cosine to the code, which
reduces to an arctangent of two weighted sums.  The code is continuous in
the underlying orientation even where the raw angle wraps around, which is
the whole point: regression targets built this way have no jump at the
symmetry boundary.

Scalars and arrays are both accepted everywhere; array inputs are processed
along the last axis.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import backend

TWO_PI = 2.0 * math.pi

#: Magnitude below which both decode sums are treated as vanishing.
INDETERMINATE_EPS = 1e-12


class IndeterminatePhaseError(ValueError):
    """The code carries no phase information: both fit sums vanish."""


@dataclass(frozen=True)
class SymmetryConfig:
    """Rotational symmetry of the objects whose orientation is being coded.

    Attributes:
        s: period of the symmetry in radians.  Angles are taken from
           [-s/2, s/2) and distances live on a circle of circumference s.
    """

    s: float

    def __post_init__(self):
        if not (math.isfinite(self.s) and self.s > 0):
            raise ValueError(f"symmetry period must be positive and finite, got {self.s}")

    @property
    def k(self) -> float:
        """Frequency multiplier mapping angles to phases: 2*pi / s."""
        return TWO_PI / self.s

    @property
    def half(self) -> float:
        return 0.5 * self.s


#: Half-turn symmetry of a long-edge box parameterization (theta and
#: theta + pi describe the same box).
RECT_SYMMETRY = SymmetryConfig(math.pi)

#: Quarter-turn symmetry: a square looks identical after a 90 degree turn.
SQUARE_SYMMETRY = SymmetryConfig(math.pi / 2)

#: No symmetry at all; use for objects with a meaningful heading.
HEADING_SYMMETRY = SymmetryConfig(TWO_PI)


def _check_finite(arr, label):
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{label} must be finite")


def _wrap(arr, period):
    # canonical reduction to [-period/2, period/2); no validation, NaN passes
    half = 0.5 * period
    out = np.mod(arr + half, period) - half
    # rounding inside the modulo can land exactly on +half; fold it back
    return np.where(out >= half, out - period, out)


def _scalar_or_array(out, like):
    if np.ndim(like) == 0:
        return float(out)
    return out


def wrap_phase(raw, period=TWO_PI):
    """Reduce a raw phase to the canonical interval [-period/2, period/2).

    The upper endpoint maps to the lower one: wrap_phase(pi) == -pi for the
    default period.

    Args:
        raw: phase(s) in radians, any finite value.
        period: wrap period, positive and finite.  Defaults to 2*pi.

    Returns:
        Wrapped phase(s), congruent to ``raw`` modulo ``period``.
    """
    if not (math.isfinite(period) and period > 0):
        raise ValueError(f"period must be positive and finite, got {period}")
    arr = np.asarray(raw, dtype=float)
    _check_finite(arr, "phase")
    return _scalar_or_array(_wrap(arr, period), raw)


def angle_to_phase(theta, cfg=RECT_SYMMETRY):
    """Map orientation angle(s) to phase(s) on the unit circle: phi = k * theta.

    Angles must already lie in the symmetry range [-s/2, s/2); out-of-range
    input raises rather than aliasing silently.
    """
    arr = np.asarray(theta, dtype=float)
    _check_finite(arr, "angle")
    if np.any(arr < -cfg.half) or np.any(arr >= cfg.half):
        raise ValueError(
            f"angle outside the symmetry range [{-cfg.half}, {cfg.half}); "
            "wrap or renormalize it first"
        )
    return _scalar_or_array(_wrap(cfg.k * arr, TWO_PI), theta)


def phase_to_angle(phi, cfg=RECT_SYMMETRY):
    """Inverse of angle_to_phase: theta = phi / k."""
    arr = np.asarray(phi, dtype=float)
    _check_finite(arr, "phase")
    return _scalar_or_array(arr / cfg.k, phi)


def encode(phi, n_step=3):
    """Sample phase(s) into an n_step-element cosine code.

    Args:
        phi: phase(s) in radians, any finite value (cosine is periodic, so
            no prior wrap is needed).
        n_step: code length, at least 3.  Below 3 the two decode sums
            cannot separate the quadrature components.

    Returns:
        Array of shape phi.shape + (n_step,) with values in [-1, 1].
    """
    n_step = int(n_step)
    if n_step < 3:
        raise ValueError(f"n_step must be at least 3, got {n_step}")
    arr = np.asarray(phi, dtype=float)
    _check_finite(arr, "phase")
    flat = np.ascontiguousarray(arr.reshape(-1))
    codes = backend.kernels.encode_batch(flat, n_step)
    return codes.reshape(arr.shape + (n_step,))


def decode(code, *, indeterminate="error"):
    """Recover phase(s) from cosine code(s) by a least-squares fit.

    For a code produced by ``encode`` this returns its phase up to float
    rounding.  Arbitrary codes yield the best-fit phase; the fit is
    invariant to adding a constant to the code and to scaling it by any
    positive factor.

    Args:
        code: array whose last axis is the code dimension (length >= 3).
        indeterminate: "error" raises IndeterminatePhaseError when both fit
            sums vanish (e.g. an all-zero code); "nan" yields NaN for those
            entries instead.

    Returns:
        Phase(s) in [-pi, pi); scalar for a single 1-D code.
    """
    if indeterminate not in ("error", "nan"):
        raise ValueError(f"indeterminate must be 'error' or 'nan', got {indeterminate!r}")
    arr = np.asarray(code, dtype=float)
    if arr.ndim == 0 or arr.shape[-1] < 3:
        raise ValueError("code must have at least 3 values along its last axis")
    _check_finite(arr, "code")
    flat = np.ascontiguousarray(arr.reshape(-1, arr.shape[-1]))
    sin_sum, cos_sum = backend.kernels.decode_sums(flat)
    bad = (np.abs(sin_sum) < INDETERMINATE_EPS) & (np.abs(cos_sum) < INDETERMINATE_EPS)
    if np.any(bad) and indeterminate == "error":
        raise IndeterminatePhaseError(
            "indeterminate phase: both decode sums vanish (code has no "
            "first-harmonic content)"
        )
    phi = _wrap(-np.arctan2(sin_sum, cos_sum), TWO_PI)
    if np.any(bad):
        phi = np.where(bad, np.nan, phi)
    phi = phi.reshape(arr.shape[:-1])
    if arr.ndim == 1:
        return float(phi)
    return phi


def angular_distance(a, b, cfg=RECT_SYMMETRY):
    """Geodesic separation of two orientations on the symmetry circle.

    Both arguments are interpreted modulo the symmetry period, so the
    result is min over integers m of |a - b + m*s|, always in [0, s/2].
    """
    diff = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    _check_finite(diff, "angle difference")
    out = np.abs(_wrap(diff, cfg.s))
    if np.ndim(a) == 0 and np.ndim(b) == 0:
        return float(out)
    return out
