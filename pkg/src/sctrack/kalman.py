"""Constant-velocity Kalman filtering of bounding-box states.

The state is the 8-vector ``[x, y, a, h, vx, vy, va, vh]``: top-left corner,
aspect ratio, height, and their per-frame rates of change.  Process and
measurement noise follow the usual box-tracking convention of standard
deviations proportional to the current box height, so the filter behaves the
same at any image resolution.

Two confidence mechanisms hook into the update:

* the measurement noise is scaled by ``(1 - score**2)``, so confident
  detections are trusted more (a score of exactly 1 removes measurement
  noise entirely and the posterior snaps to the measurement);
* the velocity components of the posterior are blended as
  ``score * posterior + (1 - score) * prior``, so a low-quality box cannot
  yank the motion estimate around.

All operations are value-in/value-out on immutable snapshots; callers never
observe partial updates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import BoundingBox, Detection

STATE_DIM = 8
MEASUREMENT_DIM = 4

# dt = 1 constant-velocity transition: position components pick up their rates
_TRANSITION = np.eye(STATE_DIM)
for _i in range(MEASUREMENT_DIM):
    _TRANSITION[_i, MEASUREMENT_DIM + _i] = 1.0
_OBSERVATION = np.eye(MEASUREMENT_DIM, STATE_DIM)

# aspect ratio is dimensionless; its noise does not scale with box height
_ASPECT_STD = 1e-2
_ASPECT_VELOCITY_STD = 1e-5
_ASPECT_MEASUREMENT_STD = 1e-1


class InvalidStateError(ValueError):
    """The filtered state no longer describes a valid box (h or a <= 0)."""


@dataclass(frozen=True)
class NoiseConfig:
    """Noise scales and confidence-mechanism switches for the filter."""

    std_weight_position: float = 1.0 / 20
    std_weight_velocity: float = 1.0 / 160
    use_confidence_noise: bool = True
    use_velocity_blend: bool = True

    def __post_init__(self):
        if not (self.std_weight_position > 0 and self.std_weight_velocity > 0):
            raise ValueError("noise weights must be positive")


@dataclass(frozen=True)
class KalmanState:
    """Filter snapshot: 8-vector mean and 8x8 covariance.

    Treated as immutable; operations hand back fresh arrays.
    """

    mean: np.ndarray
    covariance: np.ndarray


def initiate(measurement: BoundingBox, config: NoiseConfig = NoiseConfig()) -> KalmanState:
    """Start a new state from an observed box with zero initial velocity."""
    if measurement.h <= 0:
        raise ValueError(f"measurement height must be positive, got {measurement.h}")
    mean = np.array(
        [measurement.x, measurement.y, measurement.a, measurement.h, 0.0, 0.0, 0.0, 0.0]
    )
    h = measurement.h
    wp, wv = config.std_weight_position, config.std_weight_velocity
    std = np.array(
        [
            2 * wp * h,
            2 * wp * h,
            _ASPECT_STD,
            2 * wp * h,
            10 * wv * h,
            10 * wv * h,
            _ASPECT_VELOCITY_STD,
            10 * wv * h,
        ]
    )
    return KalmanState(mean=mean, covariance=np.diag(np.square(std)))


def predict(state: KalmanState, config: NoiseConfig = NoiseConfig()) -> KalmanState:
    """Advance the state by one frame under the constant-velocity model."""
    h = state.mean[3]
    wp, wv = config.std_weight_position, config.std_weight_velocity
    std = np.array(
        [
            wp * h,
            wp * h,
            _ASPECT_STD,
            wp * h,
            wv * h,
            wv * h,
            _ASPECT_VELOCITY_STD,
            wv * h,
        ]
    )
    mean = _TRANSITION @ state.mean
    covariance = _TRANSITION @ state.covariance @ _TRANSITION.T + np.diag(np.square(std))
    covariance = 0.5 * (covariance + covariance.T)
    return KalmanState(mean=mean, covariance=covariance)


def measurement_noise(state: KalmanState, score: float, config: NoiseConfig) -> np.ndarray:
    """Measurement covariance for the update, confidence-scaled when enabled."""
    h = state.mean[3]
    wp = config.std_weight_position
    std = np.array([wp * h, wp * h, _ASPECT_MEASUREMENT_STD, wp * h])
    noise = np.diag(np.square(std))
    if config.use_confidence_noise:
        noise = noise * (1.0 - score**2)
    return noise


def update(
    state: KalmanState, detection: Detection, config: NoiseConfig = NoiseConfig()
) -> KalmanState:
    """Fold one detection into a predicted state.

    Raises ValueError for scores outside [0, 1] (the Detection type already
    enforces this for well-typed callers).
    """
    score = detection.score
    if not 0.0 <= score <= 1.0:
        raise ValueError(f"detection score must lie in [0, 1], got {score}")

    mean, covariance = state.mean, state.covariance
    noise = measurement_noise(state, score, config)
    z = np.array([detection.box.x, detection.box.y, detection.box.a, detection.box.h])

    projected = _OBSERVATION @ covariance @ _OBSERVATION.T + noise
    gain = np.linalg.solve(projected, _OBSERVATION @ covariance).T
    innovation = z - _OBSERVATION @ mean
    new_mean = mean + gain @ innovation

    # Joseph form keeps the posterior symmetric PSD even when the
    # confidence-scaled noise degenerates to zero at score 1
    identity_kh = np.eye(STATE_DIM) - gain @ _OBSERVATION
    new_covariance = identity_kh @ covariance @ identity_kh.T + gain @ noise @ gain.T
    new_covariance = 0.5 * (new_covariance + new_covariance.T)

    if config.use_velocity_blend:
        blended = score * new_mean[MEASUREMENT_DIM:] + (1.0 - score) * mean[MEASUREMENT_DIM:]
        new_mean = np.concatenate([new_mean[:MEASUREMENT_DIM], blended])

    return KalmanState(mean=new_mean, covariance=new_covariance)


def project(state: KalmanState) -> BoundingBox:
    """Read the box described by the first four state components.

    Raises InvalidStateError when the state has degenerated (non-positive
    height or aspect ratio); such a track can no longer be associated and
    should be dropped by the caller.
    """
    x, y, a, h = (float(v) for v in state.mean[:MEASUREMENT_DIM])
    if not (a > 0 and h > 0 and np.isfinite([x, y, a, h]).all()):
        raise InvalidStateError(f"state does not describe a valid box: a={a}, h={h}")
    return BoundingBox(x, y, a, h)
