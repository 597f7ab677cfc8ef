"""Training loops for the three regression heads.

Heads:
    naive: one output, the angle itself.  Suffers at the symmetry boundary
        because nearly identical corner features demand targets ~pi apart.
    psc: single-frequency cosine code of the doubled angle.
    pscd: concatenated dual-frequency code; the doubled half survives the
        square quarter-turn ambiguity as well.
"""

from dataclasses import dataclass, field

import numpy as np

from ..coder import angle_to_phase, encode
from ..dual import encode_dual
from ..head import LossWeights, angle_loss, total_loss
from .network import MomentumSGD, Regressor, backward, forward

HEADS = ("naive", "psc", "pscd")


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 200
    batch_size: int = 64
    learning_rate: float = 1e-3
    n_step: int = 3
    seed: int = 0
    hidden: tuple = (64, 64)
    momentum: float = 0.9
    loss_weights: LossWeights = field(default_factory=LossWeights)
    #: epoch fractions at which the learning rate drops by 10x
    lr_decay_at: tuple = (0.6, 0.85)


class TrainingDiverged(RuntimeError):
    """Raised when the training loss stops being finite."""

    def __init__(self, head, epoch):
        super().__init__(f"training diverged for head {head!r} at epoch {epoch}")
        self.head = head
        self.epoch = epoch


def head_output_dim(head, n_step):
    if head == "naive":
        return 1
    if head == "psc":
        return n_step
    if head == "pscd":
        return 2 * n_step
    raise ValueError(f"unknown head {head!r}, expected one of {HEADS}")


def make_targets(head, thetas, n_step):
    """Regression targets for a vector of angles, shape (len, output_dim)."""
    thetas = np.asarray(thetas, dtype=float)
    if head == "naive":
        return thetas[:, None]
    if head == "psc":
        return encode(angle_to_phase(thetas), n_step)
    if head == "pscd":
        return encode_dual(thetas, n_step)
    raise ValueError(f"unknown head {head!r}, expected one of {HEADS}")


def train(head, config, samples):
    """Train a fresh regressor on the given samples.

    Each step descends the sum over the batch of per-sample total losses
    (classification and box branches fixed at zero, so w3 scales the code
    gradient).  Returns (model, loss_curve) where loss_curve holds the
    per-epoch mean angle loss, unweighted, which is the comparable quantity
    across heads.

    Raises TrainingDiverged, naming the epoch, if the loss goes non-finite.
    """
    if head not in HEADS:
        raise ValueError(f"unknown head {head!r}, expected one of {HEADS}")
    features = np.stack([s.features for s in samples])
    thetas = np.array([s.target_theta for s in samples])
    targets = make_targets(head, thetas, config.n_step)
    n = len(samples)

    rng = np.random.default_rng(config.seed)
    sizes = [features.shape[1], *config.hidden, head_output_dim(head, config.n_step)]
    model = Regressor.initialize(sizes, rng)
    opt = MomentumSGD(model, momentum=config.momentum)
    squash_output = head != "naive"
    w3 = config.loss_weights.w3

    decay_epochs = {int(frac * config.epochs) for frac in config.lr_decay_at}
    lr = config.learning_rate
    curve = []
    for epoch in range(config.epochs):
        if epoch in decay_epochs:
            lr *= 0.1
        perm = rng.permutation(n)
        loss_sum = 0.0
        for start in range(0, n, config.batch_size):
            idx = perm[start : start + config.batch_size]
            out, cache = forward(model, features[idx], squash_output)
            l_ang, grad = angle_loss(out, targets[idx])
            l_total = total_loss(0.0, 0.0, l_ang, config.loss_weights)
            if not np.isfinite(l_total):
                raise TrainingDiverged(head, epoch)
            # angle_loss averaged over the whole batch block; scaling by the
            # batch length recovers the per-sample gradient, summed
            weight_grads, bias_grads = backward(model, cache, w3 * len(idx) * grad)
            opt.step(model, weight_grads, bias_grads, lr)
            loss_sum += l_ang * len(idx)
        curve.append(loss_sum / n)
        if not np.isfinite(curve[-1]):
            raise TrainingDiverged(head, epoch)
    return model, curve
