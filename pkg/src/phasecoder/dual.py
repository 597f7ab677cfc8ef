"""Dual-frequency phase coding.

A single phase at k = 2 disambiguates the half-turn symmetry of a box but
still confuses orientations 90 degrees apart when the box is (nearly)
square: the corner geometry is identical while the code differs by a sign.
The fix is to carry two codes: x2 at double frequency, identical under a
quarter turn and therefore a clean regression target even for squares, and
x1 at the base frequency whose only job is to pick which of the two
candidate phases x2 describes.

Decoding halves the high-frequency phase, compares it against the
low-frequency phase, shifts by pi when they disagree, and rewraps:

    delta = cos(phi1)*cos(phi2/2) + sin(phi1)*sin(phi2/2)
    phi   = wrap(pi + phi2/2)  if delta < 0  else  wrap(phi2/2)

For clean codes delta is exactly +-1; a tie (delta == 0) takes the direct
branch.  The angular precision comes entirely from x2, so moderate noise on
x1 cannot hurt the result modulo a quarter turn.
"""

import math
from dataclasses import dataclass

import numpy as np

from .coder import (
    RECT_SYMMETRY,
    TWO_PI,
    _wrap,
    angle_to_phase,
    decode,
    encode,
)

#: Phase multiplier of the disambiguation code (matches the half-turn
#: symmetry of the box parameterization).
FREQ_LOW = RECT_SYMMETRY.k
#: Phase multiplier of the precision code: double the low frequency.
FREQ_HIGH = 2.0 * FREQ_LOW


@dataclass(frozen=True)
class UnwrapResult:
    """Outcome of mixing the two decoded phases.

    Attributes:
        phi: recovered base-frequency phase in [-pi, pi).
        delta: branch indicator, cos of the phase disagreement.
        branch: "shifted" when pi was added before rewrapping, else "direct".
            Arrays of either for batched input.
    """

    phi: object
    delta: object
    branch: object


def encode_dual(theta, n_step=3):
    """Encode angle(s) into the concatenated two-frequency code.

    Args:
        theta: orientation(s) in [-pi/2, pi/2).
        n_step: per-frequency code length, at least 3.

    Returns:
        Array of shape theta.shape + (2*n_step,): the base-frequency code
        followed by the double-frequency code.
    """
    arr = np.asarray(theta, dtype=float)
    phi1 = angle_to_phase(arr, RECT_SYMMETRY)  # validates the range
    phi2 = _wrap(FREQ_HIGH * arr, TWO_PI)
    x1 = encode(phi1, n_step)
    x2 = encode(phi2, n_step)
    out = np.concatenate([x1, x2], axis=-1)
    if np.ndim(theta) == 0:
        return out.reshape(-1)
    return out


def split_dual(code):
    """Split a concatenated dual code into its two halves."""
    arr = np.asarray(code, dtype=float)
    if arr.ndim == 0:
        raise ValueError("dual code must be an array")
    length = arr.shape[-1]
    if length < 6 or length % 2 != 0:
        raise ValueError(f"dual code length must be even and at least 6, got {length}")
    half = length // 2
    return arr[..., :half], arr[..., half:]


def decode_dual(code, *, indeterminate="error"):
    """Decode a dual code into an unambiguous phase.

    The high-frequency half fixes the phase modulo pi; the low-frequency
    half selects between the two candidates.  See the module docstring for
    the branch rule.

    Args:
        code: array whose last axis holds both codes (even length >= 6).
        indeterminate: passed through to ``decode``; with "nan", entries
            where either half is indeterminate come back as NaN phase.

    Returns:
        UnwrapResult with phi in [-pi, pi).
    """
    x1, x2 = split_dual(code)
    phi1 = np.asarray(decode(x1, indeterminate=indeterminate))
    phi2 = np.asarray(decode(x2, indeterminate=indeterminate))
    half2 = 0.5 * phi2
    delta = np.cos(phi1) * np.cos(half2) + np.sin(phi1) * np.sin(half2)
    shifted = delta < 0
    phi = _wrap(np.where(shifted, math.pi + half2, half2), TWO_PI)
    bad = np.isnan(phi1) | np.isnan(phi2)
    if np.any(bad):
        phi = np.where(bad, np.nan, phi)
        delta = np.where(bad, np.nan, delta)
    branch = np.where(shifted, "shifted", "direct")
    if np.asarray(code).ndim == 1:
        return UnwrapResult(float(phi), float(delta), str(branch[()]))
    return UnwrapResult(phi, delta, branch)


def decode_dual_to_angle(code, *, indeterminate="error"):
    """Decode a dual code straight to the orientation angle phi / 2.

    Returns angle(s) in [-pi/2, pi/2); NaN entries pass through when
    ``indeterminate="nan"``.
    """
    result = decode_dual(code, indeterminate=indeterminate)
    theta = np.asarray(result.phi, dtype=float) / FREQ_LOW
    if np.asarray(code).ndim == 1:
        return float(theta)
    return theta
