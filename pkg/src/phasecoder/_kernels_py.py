"""Reference NumPy kernels.

The compiled module `_kernels_cy` mirrors these function-for-function; both
operate on contiguous float64 arrays.  Anything that needs shape handling,
validation, or scalar convenience lives one level up.
"""

import numpy as np


def _step_angles(n_step):
    # sampling offsets 2*pi*n/n_step for n = 1..n_step
    return 2.0 * np.pi * np.arange(1, n_step + 1) / n_step


def encode_batch(phi, n_step):
    """cos(phi + 2*pi*n/n_step) for n = 1..n_step, shape (len(phi), n_step)."""
    return np.cos(phi[:, None] + _step_angles(n_step)[None, :])


def decode_sums(codes):
    """Quadrature sums of each code row against the sampling offsets.

    Returns (sin_sum, cos_sum), each of shape (rows,).  For a clean code of
    phase phi these equal -(n/2)*sin(phi) and (n/2)*cos(phi).
    """
    ang = _step_angles(codes.shape[1])
    return codes @ np.sin(ang), codes @ np.cos(ang)


def squash(x):
    """2*sigmoid(x) - 1 elementwise, stable on both tails."""
    out = np.empty_like(x)
    pos = x >= 0
    t = np.exp(-x[pos])
    out[pos] = 2.0 / (1.0 + t) - 1.0
    t = np.exp(x[~pos])
    out[~pos] = 2.0 * t / (1.0 + t) - 1.0
    return out


def squash_grad(x):
    """Derivative of squash: 2*s*(1-s) with s = sigmoid(x)."""
    # both branches reduce to 2*t/(1+t)^2 with t = exp(-|x|)
    t = np.exp(-np.abs(x))
    return 2.0 * t / (1.0 + t) ** 2
