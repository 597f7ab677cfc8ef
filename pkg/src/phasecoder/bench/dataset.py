"""Synthetic oriented boxes rendered to corner features.

Each sample is a rectangle (or, with ``square_fraction`` > 0, an exact
square) described by its four corner points.  The corners are listed in a
canonical order, ascending polar angle around the center with ties broken
by distance, so the features depend only on the corner set.  That makes
them identical for theta and theta + pi, and identical for a square under
a quarter turn, which is exactly the ambiguity the coders are meant to
survive and a naive angle target is not.
"""

import math
from dataclasses import dataclass

import numpy as np

HALF_PI = 0.5 * math.pi

#: Aspect ratio range of the non-square boxes.
ASPECT_RANGE = (1.5, 4.0)
#: Short side of every generated box.  Small boxes keep the pinned feature
#: noise comparable to the corner radius, so angle errors near the range
#: boundary actually show up instead of drowning in the geometry.
BOX_SCALE = 0.2
#: Centers are drawn uniformly from [-CENTER_RANGE, CENTER_RANGE]^2.
CENTER_RANGE = 5.0
#: Features per sample: four corner offsets, flattened.
FEATURE_DIM = 8


@dataclass(frozen=True)
class OrientedBox:
    """Long-edge box: w >= h, theta measured against the long edge."""

    cx: float
    cy: float
    w: float
    h: float
    theta: float

    def __post_init__(self):
        if not (self.w >= self.h > 0):
            raise ValueError(f"box needs w >= h > 0, got w={self.w}, h={self.h}")
        if not (-HALF_PI <= self.theta < HALF_PI):
            raise ValueError(f"theta must lie in [-pi/2, pi/2), got {self.theta}")

    @property
    def is_square(self) -> bool:
        return self.w == self.h

    def corners(self) -> np.ndarray:
        return box_corners(self.cx, self.cy, self.w, self.h, self.theta)


def box_corners(cx, cy, w, h, theta):
    """Corner coordinates of a box, shape (4, 2).  Raw geometry, no range checks."""
    c, s = math.cos(theta), math.sin(theta)
    hw, hh = 0.5 * w, 0.5 * h
    local = np.array([[hw, hh], [-hw, hh], [-hw, -hh], [hw, -hh]])
    rot = np.array([[c, -s], [s, c]])
    return local @ rot.T + np.array([cx, cy])


def corner_features(corners, center):
    """Flatten corner offsets in canonical order.

    Order: ascending polar angle of the offset around ``center``, ties
    broken by distance from the center.
    """
    off = np.asarray(corners, dtype=float) - np.asarray(center, dtype=float)
    ang = np.arctan2(off[:, 1], off[:, 0])
    radius = np.hypot(off[:, 0], off[:, 1])
    order = np.lexsort((radius, ang))
    return off[order].reshape(-1)


@dataclass(frozen=True)
class Sample:
    """One benchmark item: features, angle target, and the square flag.

    The flag records how the box was generated; it is never inferred from
    the (possibly noisy) features.
    """

    features: np.ndarray
    target_theta: float
    is_square: bool


def generate_dataset(count, square_fraction=0.0, noise_sigma=0.0, seed=0):
    """Deterministic corpus of boxes rendered to corner features.

    Args:
        count: number of samples, positive.
        square_fraction: fraction of exactly-square boxes (w == h);
            the rest get aspect ratios uniform in [1.5, 4].
        noise_sigma: stddev of i.i.d. Gaussian noise added to the features
            after ordering; 0 leaves them exact.
        seed: RNG seed; the same arguments always produce the same samples.

    Returns:
        list[Sample] with target_theta uniform over [-pi/2, pi/2).
    """
    count = int(count)
    if count <= 0:
        raise ValueError(f"count must be positive, got {count}")
    if not (0.0 <= square_fraction <= 1.0):
        raise ValueError(f"square_fraction must lie in [0, 1], got {square_fraction}")
    if not (math.isfinite(noise_sigma) and noise_sigma >= 0):
        raise ValueError(f"noise_sigma must be non-negative, got {noise_sigma}")

    rng = np.random.default_rng(seed)
    n_square = int(round(count * square_fraction))
    square_mask = np.zeros(count, dtype=bool)
    square_mask[:n_square] = True
    square_mask = square_mask[rng.permutation(count)]

    theta = rng.uniform(-HALF_PI, HALF_PI, count)
    aspect = rng.uniform(ASPECT_RANGE[0], ASPECT_RANGE[1], count)
    centers = rng.uniform(-CENTER_RANGE, CENTER_RANGE, (count, 2))

    feats = np.empty((count, FEATURE_DIM))
    for i in range(count):
        w = BOX_SCALE if square_mask[i] else BOX_SCALE * aspect[i]
        box = OrientedBox(centers[i, 0], centers[i, 1], w, BOX_SCALE, theta[i])
        feats[i] = corner_features(box.corners(), centers[i])
    if noise_sigma > 0:
        feats += noise_sigma * rng.standard_normal((count, FEATURE_DIM))

    return [
        Sample(feats[i], float(theta[i]), bool(square_mask[i]))
        for i in range(count)
    ]
