"""Decode-side evaluation with symmetry-respecting angular errors.

Errors are geodesic distances on the symmetry circle of each sample: period
pi for rectangles, pi/2 for exact squares (a quarter-turn-flipped square
prediction is not a mistake).  Predictions that decode as indeterminate are
counted and charged the worst-case error for their symmetry rather than
dropped, so they cannot flatter the aggregates.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ..coder import RECT_SYMMETRY, SQUARE_SYMMETRY, angular_distance, decode
from ..dual import decode_dual_to_angle
from .network import forward
from .train import make_targets

#: Samples with |theta| > pi/2 - BOUNDARY_MARGIN count as boundary region.
BOUNDARY_MARGIN = 0.1

#: Error thresholds for the "fraction within" summary, in degrees.
THRESHOLDS_DEG = (2.0, 5.0, 10.0)


@dataclass
class EvalReport:
    """Per-sample errors plus order-independent aggregates."""

    head: str
    n_step: int
    count: int
    errors: np.ndarray
    pred_theta: np.ndarray
    target_theta: np.ndarray
    is_square: np.ndarray
    is_boundary: np.ndarray
    indeterminate: np.ndarray
    mean_err: float = field(init=False)
    median_err: float = field(init=False)
    max_err: float = field(init=False)
    frac_within: dict = field(init=False)
    boundary_count: int = field(init=False)
    boundary_mean_err: float = field(init=False)
    boundary_median_err: float = field(init=False)
    n_indeterminate: int = field(init=False)

    def __post_init__(self):
        # sort before reducing so the aggregates cannot depend on sample order
        ordered = np.sort(self.errors)
        self.mean_err = float(np.mean(ordered))
        self.median_err = float(np.median(ordered))
        self.max_err = float(ordered[-1])
        self.frac_within = {
            deg: float(np.mean(ordered <= math.radians(deg))) for deg in THRESHOLDS_DEG
        }
        boundary_errors = np.sort(self.errors[self.is_boundary])
        self.boundary_count = int(boundary_errors.size)
        if boundary_errors.size:
            self.boundary_mean_err = float(np.mean(boundary_errors))
            self.boundary_median_err = float(np.median(boundary_errors))
        else:
            self.boundary_mean_err = float("nan")
            self.boundary_median_err = float("nan")
        self.n_indeterminate = int(np.count_nonzero(self.indeterminate))

    def summary(self):
        """Aggregate metrics as a plain dict (for CSV/JSON rows)."""
        out = {
            "count": self.count,
            "mean_err": self.mean_err,
            "median_err": self.median_err,
            "max_err": self.max_err,
            "boundary_count": self.boundary_count,
            "boundary_mean_err": self.boundary_mean_err,
            "boundary_median_err": self.boundary_median_err,
            "n_indeterminate": self.n_indeterminate,
        }
        for deg in THRESHOLDS_DEG:
            out[f"frac_within_{deg:g}deg"] = self.frac_within[deg]
        return out


def decode_outputs(head, outputs):
    """Head outputs decoded to angles; NaN where the phase is indeterminate."""
    outputs = np.asarray(outputs, dtype=float)
    if head == "naive":
        return outputs[:, 0].copy()
    if head == "psc":
        return decode(outputs, indeterminate="nan") / RECT_SYMMETRY.k
    if head == "pscd":
        return decode_dual_to_angle(outputs, indeterminate="nan")
    raise ValueError(f"unknown head {head!r}")


def predict_angles(model, head, features):
    """Run the model and decode its outputs to angles."""
    out, _ = forward(model, features, squash_output=head != "naive")
    return decode_outputs(head, out)


def evaluate(model, head, samples, n_step, outputs=None):
    """Score a trained model on a sample list; returns an EvalReport.

    ``outputs`` bypasses the model entirely and decodes the given head
    outputs instead; tests use it to drive the decode path with exact codes.
    """
    features = np.stack([s.features for s in samples])
    target = np.array([s.target_theta for s in samples])
    is_square = np.array([s.is_square for s in samples], dtype=bool)

    if outputs is None:
        pred = predict_angles(model, head, features)
    else:
        pred = decode_outputs(head, outputs)
    indeterminate = ~np.isfinite(pred)
    period = np.where(is_square, SQUARE_SYMMETRY.s, RECT_SYMMETRY.s)

    errors = np.empty(len(samples))
    ok = ~indeterminate
    for mask, cfg in ((ok & ~is_square, RECT_SYMMETRY), (ok & is_square, SQUARE_SYMMETRY)):
        if np.any(mask):
            errors[mask] = angular_distance(pred[mask], target[mask], cfg)
    # worst case for the sample's own symmetry; keeps errors in [0, s/2]
    errors[indeterminate] = 0.5 * period[indeterminate]

    is_boundary = np.abs(target) > (0.5 * math.pi - BOUNDARY_MARGIN)
    return EvalReport(
        head=head,
        n_step=n_step,
        count=len(samples),
        errors=errors,
        pred_theta=pred,
        target_theta=target,
        is_square=is_square,
        is_boundary=is_boundary,
        indeterminate=indeterminate,
    )


def oracle_roundtrip_error(samples, head, n_step):
    """Max angular error of ground-truth targets pushed through the decode path.

    Bypasses the regressor entirely: for the code heads this is the
    encode-then-decode identity, for the naive head it is the identity on
    the angle itself.  Any value above float-rounding level means the
    decode path, not the model, is broken.
    """
    thetas = np.array([s.target_theta for s in samples])
    targets = make_targets(head, thetas, n_step)
    if head == "naive":
        recovered = targets[:, 0]
    elif head == "psc":
        recovered = decode(targets) / RECT_SYMMETRY.k
    else:
        recovered = decode_dual_to_angle(targets)
    return float(np.max(angular_distance(recovered, thetas, RECT_SYMMETRY)))
