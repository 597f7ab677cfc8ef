"""Dual-frequency coder: branch selection, quarter-turn behavior, robustness."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from phasecoder import (
    RECT_SYMMETRY,
    SQUARE_SYMMETRY,
    IndeterminatePhaseError,
    angular_distance,
    decode,
    decode_dual,
    decode_dual_to_angle,
    encode,
    encode_dual,
    split_dual,
    wrap_phase,
)

HALF_PI = 0.5 * math.pi


def test_encode_dual_zero():
    code = encode_dual(0.0)
    assert code.shape == (6,)
    assert np.allclose(code[:3], encode(0.0, 3), atol=1e-15)
    assert np.allclose(code[3:], encode(0.0, 3), atol=1e-15)


def test_encode_dual_composition():
    # the two halves are the codes of the doubled and quadrupled angle
    code = encode_dual(0.6)
    assert np.allclose(code[:3], encode(1.2, 3), atol=1e-12)
    assert np.allclose(code[3:], encode(2.4, 3), atol=1e-12)


def test_encode_dual_shapes():
    assert encode_dual(0.1, 4).shape == (8,)
    theta = np.linspace(-HALF_PI, HALF_PI, 11, endpoint=False)
    assert encode_dual(theta).shape == (11, 6)
    assert encode_dual(theta, 5).shape == (11, 10)


def test_encode_dual_rejects_out_of_range():
    with pytest.raises(ValueError):
        encode_dual(HALF_PI)
    with pytest.raises(ValueError):
        encode_dual(2.0)
    with pytest.raises(ValueError):
        encode_dual(float("nan"))
    with pytest.raises(ValueError):
        encode_dual(0.0, 2)


def test_split_dual():
    theta = np.array([0.1, -0.4])
    code = encode_dual(theta, 4)
    x1, x2 = split_dual(code)
    assert x1.shape == x2.shape == (2, 4)
    assert np.array_equal(np.concatenate([x1, x2], axis=-1), code)
    with pytest.raises(ValueError):
        split_dual(np.zeros(7))
    with pytest.raises(ValueError):
        split_dual(np.zeros(4))
    with pytest.raises(ValueError):
        split_dual(1.0)


def test_high_frequency_half_ignores_quarter_turn():
    theta = np.linspace(-HALF_PI, 0.0, 2000, endpoint=False)
    for n in (3, 4, 5):
        _, x2_a = split_dual(encode_dual(theta, n))
        _, x2_b = split_dual(encode_dual(theta + HALF_PI, n))
        assert np.abs(x2_a - x2_b).max() <= 1e-9


def test_decode_dual_direct_branch():
    res = decode_dual(encode_dual(0.6))
    assert abs(res.phi - 1.2) < 1e-9
    assert abs(res.delta - 1.0) < 1e-9
    assert res.branch == "direct"


def test_decode_dual_shifted_branch():
    # the high-frequency phase of theta = -1 wraps, so the raw half-phase
    # points a half turn away and the low-frequency code must flip it back
    res = decode_dual(encode_dual(-1.0))
    assert abs(res.phi - (-2.0)) < 1e-9
    assert abs(res.delta - (-1.0)) < 1e-9
    assert res.branch == "shifted"


def test_decode_dual_zero_code():
    res = decode_dual(np.concatenate([encode(0.0, 3), encode(0.0, 3)]))
    assert abs(res.phi) < 1e-12
    assert abs(res.delta - 1.0) < 1e-12
    assert res.branch == "direct"


def test_decode_dual_batch_types():
    theta = np.array([0.6, -1.0, 0.0])
    res = decode_dual(encode_dual(theta))
    assert res.phi.shape == (3,)
    assert list(res.branch) == ["direct", "shifted", "direct"]
    assert np.allclose(np.abs(res.delta), 1.0, atol=1e-9)


def test_decode_dual_to_angle_values():
    assert abs(decode_dual_to_angle(encode_dual(-1.0)) - (-1.0)) < 1e-9
    assert abs(decode_dual_to_angle(encode_dual(0.0))) < 1e-12
    assert isinstance(decode_dual_to_angle(encode_dual(0.3)), float)


def test_dual_round_trip_grid():
    theta = np.linspace(-HALF_PI, HALF_PI, 10_000, endpoint=False)
    for n in (3, 4, 5):
        rec = decode_dual_to_angle(encode_dual(theta, n))
        assert angular_distance(rec, theta, RECT_SYMMETRY).max() <= 1e-9


def test_dual_round_trip_near_boundary():
    eps = np.array([1e-15, 1e-12, 1e-9, 1e-6])
    theta = np.concatenate([-HALF_PI + eps, HALF_PI - eps, [-HALF_PI]])
    rec = decode_dual_to_angle(encode_dual(theta))
    assert angular_distance(rec, theta, RECT_SYMMETRY).max() <= 1e-9


def test_clean_delta_is_unit():
    theta = np.linspace(-HALF_PI, HALF_PI, 5000, endpoint=False)
    res = decode_dual(encode_dual(theta))
    assert np.abs(np.abs(res.delta) - 1.0).max() <= 1e-9


def test_unwrap_consistency():
    # re-doubling the decoded phase must land back on the high-freq phase
    theta = np.linspace(-HALF_PI, HALF_PI, 4000, endpoint=False)
    code = encode_dual(theta)
    res = decode_dual(code)
    _, x2 = split_dual(code)
    gap = np.abs(wrap_phase(2.0 * res.phi) - decode(x2))
    gap = np.minimum(gap, 2.0 * math.pi - gap)
    assert gap.max() <= 1e-9


def test_low_frequency_noise_does_not_move_angle_mod_quarter():
    rng = np.random.default_rng(5)
    theta = rng.uniform(-HALF_PI, HALF_PI, 2000)
    code = encode_dual(theta)
    code[:, :3] += rng.uniform(-0.2, 0.2, (2000, 3))
    res = decode_dual(code)
    confident = np.abs(res.delta) > 0.5
    assert confident.mean() > 0.9
    rec = res.phi[confident] / 2.0
    err = angular_distance(rec, theta[confident], SQUARE_SYMMETRY)
    assert err.max() <= 1e-9


def test_decode_dual_indeterminate_propagation():
    code = encode_dual(np.array([0.4, -0.2]))
    code[1, :3] = 0.0  # kill the low-frequency half of one row
    with pytest.raises(IndeterminatePhaseError):
        decode_dual(code)
    res = decode_dual(code, indeterminate="nan")
    assert abs(res.phi[0] - 0.8) < 1e-9
    assert math.isnan(res.phi[1]) and math.isnan(res.delta[1])
    assert math.isnan(decode_dual_to_angle(code, indeterminate="nan")[1])


@given(
    st.floats(min_value=-HALF_PI, max_value=HALF_PI, exclude_max=True),
    st.integers(min_value=3, max_value=8),
)
def test_dual_round_trip_property(theta, n_step):
    rec = decode_dual_to_angle(encode_dual(theta, n_step))
    assert angular_distance(rec, theta, RECT_SYMMETRY) <= 1e-9
