"""Small dense regressor with hand-written backprop.

Kept deliberately explicit (no autograd) so every gradient in the training
path can be checked against central finite differences.
"""

import numpy as np

from ..head import squash, squash_grad


class Regressor:
    """Feed-forward network: linear layers with rectifier hidden units."""

    def __init__(self, weights, biases):
        self.weights = weights
        self.biases = biases

    @classmethod
    def initialize(cls, layer_sizes, rng):
        """Scaled-normal weight init, zero biases, drawn from ``rng``."""
        weights, biases = [], []
        for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
            weights.append(rng.standard_normal((fan_in, fan_out)) * np.sqrt(2.0 / fan_in))
            biases.append(np.zeros(fan_out))
        return cls(weights, biases)

    @property
    def input_dim(self):
        return self.weights[0].shape[0]

    @property
    def output_dim(self):
        return self.weights[-1].shape[1]


def forward(model, x, squash_output=False):
    """Run the network; returns (output, cache) with cache feeding backward().

    ``squash_output`` bounds the final layer to (-1, 1) for code targets;
    a plain angle head leaves it off.
    """
    arr = np.asarray(x, dtype=float)
    single = arr.ndim == 1
    batch = np.atleast_2d(arr)
    if batch.shape[1] != model.input_dim:
        raise ValueError(
            f"feature dimension {batch.shape[1]} does not match the model "
            f"input dimension {model.input_dim}"
        )
    acts = [batch]
    pres = []
    last = len(model.weights) - 1
    for i, (w, b) in enumerate(zip(model.weights, model.biases)):
        z = acts[-1] @ w + b
        pres.append(z)
        acts.append(np.maximum(z, 0.0) if i < last else z)
    out = squash(pres[-1]) if squash_output else pres[-1]
    cache = (acts, pres, squash_output)
    if single:
        return out[0], cache
    return out, cache


def backward(model, cache, grad_output):
    """Parameter gradients given d(loss)/d(output).

    Returns (weight_grads, bias_grads) matching the model's layer lists.
    """
    acts, pres, squashed = cache
    g = np.atleast_2d(np.asarray(grad_output, dtype=float))
    if squashed:
        g = g * squash_grad(pres[-1])
    n_layers = len(model.weights)
    weight_grads = [None] * n_layers
    bias_grads = [None] * n_layers
    for i in reversed(range(n_layers)):
        weight_grads[i] = acts[i].T @ g
        bias_grads[i] = g.sum(axis=0)
        if i > 0:
            g = (g @ model.weights[i].T) * (pres[i - 1] > 0.0)
    return weight_grads, bias_grads


class MomentumSGD:
    """Plain SGD with classical momentum."""

    def __init__(self, model, momentum=0.9):
        self.momentum = momentum
        self.vel_w = [np.zeros_like(w) for w in model.weights]
        self.vel_b = [np.zeros_like(b) for b in model.biases]

    def step(self, model, weight_grads, bias_grads, learning_rate):
        for i in range(len(model.weights)):
            self.vel_w[i] = self.momentum * self.vel_w[i] - learning_rate * weight_grads[i]
            self.vel_b[i] = self.momentum * self.vel_b[i] - learning_rate * bias_grads[i]
            model.weights[i] += self.vel_w[i]
            model.biases[i] += self.vel_b[i]
