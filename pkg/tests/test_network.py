"""Regressor forward/backward math and the momentum optimizer."""

import numpy as np
import pytest

from phasecoder.bench.network import MomentumSGD, Regressor, backward, forward
from phasecoder.head import squash


def tiny_model():
    # fixed weights so every expectation below is hand-checkable
    w1 = np.array([[1.0, -1.0], [0.5, 2.0]])
    b1 = np.array([0.1, -0.2])
    w2 = np.array([[2.0], [-1.0]])
    b2 = np.array([0.3])
    return Regressor([w1, w2], [b1, b2])


def test_initialize_shapes_and_determinism():
    model = Regressor.initialize([8, 64, 64, 3], np.random.default_rng(0))
    assert [w.shape for w in model.weights] == [(8, 64), (64, 64), (64, 3)]
    assert all(np.all(b == 0.0) for b in model.biases)
    assert model.input_dim == 8
    assert model.output_dim == 3
    again = Regressor.initialize([8, 64, 64, 3], np.random.default_rng(0))
    for a, b in zip(model.weights, again.weights):
        assert np.array_equal(a, b)


def test_forward_hand_computed():
    model = tiny_model()
    x = np.array([1.0, 2.0])
    # pre-activations: [1*1 + 2*0.5 + 0.1, 1*(-1) + 2*2 - 0.2] = [2.1, 2.8]
    out, _ = forward(model, x)
    expected = 2.1 * 2.0 + 2.8 * (-1.0) + 0.3
    assert out.shape == (1,)
    assert abs(out[0] - expected) < 1e-12


def test_forward_relu_clamps_hidden():
    model = tiny_model()
    x = np.array([-1.0, 0.0])
    # pre-activations [-0.9, 0.8]; the negative one is cut before layer 2
    out, _ = forward(model, x)
    assert abs(out[0] - (0.8 * (-1.0) + 0.3)) < 1e-12


def test_forward_squash_output():
    model = tiny_model()
    x = np.array([[1.0, 2.0], [0.0, 0.0]])
    raw, _ = forward(model, x)
    squashed, _ = forward(model, x, squash_output=True)
    assert np.allclose(squashed, squash(raw), atol=1e-15)
    assert np.all(np.abs(squashed) < 1.0)


def test_forward_shapes():
    model = tiny_model()
    out, _ = forward(model, np.zeros(2))
    assert out.shape == (1,)
    out, _ = forward(model, np.zeros((5, 2)))
    assert out.shape == (5, 1)
    with pytest.raises(ValueError):
        forward(model, np.zeros(3))
    with pytest.raises(ValueError):
        forward(model, np.zeros((4, 7)))


@pytest.mark.parametrize("squash_output", [False, True])
def test_backward_matches_finite_differences(squash_output):
    rng = np.random.default_rng(23)
    model = Regressor.initialize([6, 4, 3], rng)
    x = rng.standard_normal((5, 6))
    probe = rng.standard_normal((5, 3))

    _, cache = forward(model, x, squash_output)
    wgrads, bgrads = backward(model, cache, probe)

    def objective():
        out, _ = forward(model, x, squash_output)
        return float(np.sum(probe * out))

    h = 1e-6
    worst = 0.0
    for params, grads in ((model.weights, wgrads), (model.biases, bgrads)):
        for layer, grad in zip(params, grads):
            flat, gflat = layer.reshape(-1), grad.reshape(-1)
            for j in range(flat.size):
                orig = flat[j]
                flat[j] = orig + h
                up = objective()
                flat[j] = orig - h
                down = objective()
                flat[j] = orig
                fd = (up - down) / (2 * h)
                denom = max(abs(fd), abs(gflat[j]), 1e-8)
                worst = max(worst, abs(fd - gflat[j]) / denom)
    assert worst < 1e-4


def test_backward_single_sample_gradient():
    # batch of one: weight gradient is the plain outer product
    model = tiny_model()
    x = np.array([1.0, 2.0])
    _, cache = forward(model, x)
    wgrads, bgrads = backward(model, cache, np.array([1.0]))
    acts1 = np.array([2.1, 2.8])
    assert np.allclose(wgrads[1], acts1[:, None], atol=1e-12)
    assert np.allclose(bgrads[1], [1.0], atol=1e-12)
    # layer-1 gradient: downstream weight times input, ReLU open everywhere
    assert np.allclose(wgrads[0], np.outer(x, model.weights[1][:, 0]), atol=1e-12)


def test_momentum_sgd_two_steps():
    model = Regressor([np.array([[1.0]])], [np.array([0.0])])
    opt = MomentumSGD(model, momentum=0.9)
    g = [np.array([[1.0]])]
    gb = [np.array([0.5])]

    opt.step(model, g, gb, learning_rate=0.1)
    assert abs(model.weights[0][0, 0] - 0.9) < 1e-12  # v = -0.1
    assert abs(model.biases[0][0] + 0.05) < 1e-12

    opt.step(model, g, gb, learning_rate=0.1)
    # v = 0.9*(-0.1) - 0.1 = -0.19
    assert abs(model.weights[0][0, 0] - 0.71) < 1e-12
    assert abs(model.biases[0][0] + 0.145) < 1e-12


def test_momentum_zero_matches_plain_sgd():
    model = Regressor([np.array([[2.0]])], [np.array([1.0])])
    opt = MomentumSGD(model, momentum=0.0)
    for _ in range(3):
        opt.step(model, [np.array([[1.0]])], [np.array([1.0])], 0.5)
    assert abs(model.weights[0][0, 0] - 0.5) < 1e-12
    assert abs(model.biases[0][0] + 0.5) < 1e-12
