"""Training-side transforms for code regression.

A network that regresses cosine codes needs its raw outputs bounded to the
code range, a loss on the code vector, and a way to fold that loss into a
larger multi-task objective.  Each transform here comes with its analytic
derivative so the benchmark's hand-written backprop stays checkable against
finite differences.
"""

from dataclasses import dataclass

import numpy as np

from . import backend


@dataclass(frozen=True)
class LossWeights:
    """Branch weights of the combined objective w1*cls + w2*box + w3*angle.

    The angle branch defaults to 0.2 * w1.
    """

    w1: float = 1.0
    w2: float = 1.0
    w3: float | None = None

    def __post_init__(self):
        if self.w3 is None:
            object.__setattr__(self, "w3", 0.2 * self.w1)
        for label in ("w1", "w2", "w3"):
            value = getattr(self, label)
            if not (np.isfinite(value) and value >= 0):
                raise ValueError(f"loss weight {label} must be non-negative, got {value}")


def squash(x):
    """Map unbounded activations into (-1, 1): y = 2*sigmoid(x) - 1."""
    arr = np.asarray(x, dtype=float)
    flat = np.ascontiguousarray(arr.reshape(-1))
    out = backend.kernels.squash(flat).reshape(arr.shape)
    if np.ndim(x) == 0:
        return float(out)
    return out


def squash_grad(x):
    """Elementwise derivative of squash: 2*sigmoid(x)*(1 - sigmoid(x))."""
    arr = np.asarray(x, dtype=float)
    flat = np.ascontiguousarray(arr.reshape(-1))
    out = backend.kernels.squash_grad(flat).reshape(arr.shape)
    if np.ndim(x) == 0:
        return float(out)
    return out


def angle_loss(pred, gt):
    """Mean absolute error between code vectors, with its gradient.

    Args:
        pred: predicted code values.
        gt: ground-truth code values, same shape.

    Returns:
        (loss, grad) where grad is d(loss)/d(pred): -sign(gt - pred)/size,
        zero exactly at equal entries.
    """
    p = np.asarray(pred, dtype=float)
    g = np.asarray(gt, dtype=float)
    if p.shape != g.shape:
        raise ValueError(f"prediction and target shapes differ: {p.shape} vs {g.shape}")
    if p.size == 0:
        raise ValueError("empty code")
    diff = g - p
    loss = float(np.mean(np.abs(diff)))
    grad = -np.sign(diff) / diff.size
    return loss, grad


def total_loss(l_cls, l_box, l_ang, weights=None):
    """Weighted sum of the three task branches."""
    if weights is None:
        weights = LossWeights()
    return weights.w1 * l_cls + weights.w2 * l_box + weights.w3 * l_ang
