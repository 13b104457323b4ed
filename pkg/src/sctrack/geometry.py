"""Axis-aligned bounding boxes and overlap-based association distances.

Boxes are stored the way the motion filter consumes them: top-left corner
``(x, y)``, aspect ratio ``a = w / h`` and height ``h``.  All overlap math
converts to corner form ``(x1, y1, x2, y2)`` internally; the conversions are
exact up to floating-point rounding.

The association distance is an IoU distance augmented with two shape
penalties: a squared height difference and a squared area difference, each
normalized by the corresponding dimension of the minimum enclosing rectangle
of the two boxes.  Two boxes with identical overlap but different shapes get
different distances, which is what keeps a track from latching onto a
similarly-placed but differently-shaped detection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_EPSILON = 1e-7


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned box: top-left corner, aspect ratio (w/h) and height.

    Width is derived as ``w = a * h``.  Both ``a`` and ``h`` must be
    strictly positive, so every valid box has positive area.
    """

    x: float
    y: float
    a: float
    h: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.a, self.h)):
            raise ValueError(f"box fields must be finite, got {self!r}")
        if self.a <= 0 or self.h <= 0:
            raise ValueError(f"box requires a > 0 and h > 0, got a={self.a}, h={self.h}")

    @classmethod
    def from_tlwh(cls, x: float, y: float, w: float, h: float) -> "BoundingBox":
        """Build a box from top-left corner plus width and height."""
        if not (w > 0 and h > 0):
            raise ValueError(f"box requires w > 0 and h > 0, got w={w}, h={h}")
        return cls(float(x), float(y), float(w) / float(h), float(h))

    @property
    def w(self) -> float:
        return self.a * self.h

    @property
    def area(self) -> float:
        return self.w * self.h

    def to_tlwh(self) -> tuple[float, float, float, float]:
        return (self.x, self.y, self.w, self.h)

    def to_corners(self) -> tuple[float, float, float, float]:
        """Corner form ``(x1, y1, x2, y2)`` with ``x2 = x + w``, ``y2 = y + h``."""
        return (self.x, self.y, self.x + self.w, self.y + self.h)


@dataclass(frozen=True)
class Detection:
    """A detector output: bounding box plus confidence score in [0, 1]."""

    box: BoundingBox
    score: float

    def __post_init__(self):
        if not (isinstance(self.score, (int, float)) and 0.0 <= self.score <= 1.0):
            raise ValueError(f"detection score must lie in [0, 1], got {self.score!r}")


@dataclass(frozen=True)
class ShapeIoUParams:
    """Switches and stabilizer for the shape-aware IoU distance.

    With both term flags off the distance reduces exactly to ``1 - IoU``.
    ``epsilon`` keeps the penalty denominators valid; it must be positive.
    """

    epsilon: float = DEFAULT_EPSILON
    use_height_term: bool = True
    use_area_term: bool = True

    def __post_init__(self):
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise ValueError(f"epsilon must be a positive finite value, got {self.epsilon}")


PLAIN_IOU_PARAMS = ShapeIoUParams(use_height_term=False, use_area_term=False)


def boxes_to_corners(boxes) -> np.ndarray:
    """Stack boxes into an ``(N, 4)`` float64 corner array."""
    if not boxes:
        return np.zeros((0, 4), dtype=np.float64)
    return np.array([b.to_corners() for b in boxes], dtype=np.float64)


def pairwise_iou(corners_a: np.ndarray, corners_b: np.ndarray) -> np.ndarray:
    """Pairwise IoU between two corner arrays, shape ``(M, N)``.

    Boxes that only touch along an edge or corner have intersection area zero
    and therefore IoU zero.
    """
    m, n = len(corners_a), len(corners_b)
    if m == 0 or n == 0:
        return np.zeros((m, n), dtype=np.float64)
    a = np.asarray(corners_a, dtype=np.float64)[:, None, :]
    b = np.asarray(corners_b, dtype=np.float64)[None, :, :]
    iw = np.minimum(a[..., 2], b[..., 2]) - np.maximum(a[..., 0], b[..., 0])
    ih = np.minimum(a[..., 3], b[..., 3]) - np.maximum(a[..., 1], b[..., 1])
    inter = np.clip(iw, 0.0, None) * np.clip(ih, 0.0, None)
    area_a = (a[..., 2] - a[..., 0]) * (a[..., 3] - a[..., 1])
    area_b = (b[..., 2] - b[..., 0]) * (b[..., 3] - b[..., 1])
    # valid boxes have positive area, so the union is always positive
    return inter / (area_a + area_b - inter)


def pairwise_shape_iou_distance(
    corners_a: np.ndarray,
    corners_b: np.ndarray,
    params: ShapeIoUParams = ShapeIoUParams(),
) -> np.ndarray:
    """Pairwise shape-aware IoU distance, shape ``(M, N)``.

    Each entry is ``1 - IoU`` plus, when enabled, the squared height and area
    differences of the pair normalized by the height / area of their minimum
    enclosing rectangle (stabilized by ``params.epsilon``).
    """
    m, n = len(corners_a), len(corners_b)
    if m == 0 or n == 0:
        return np.zeros((m, n), dtype=np.float64)
    a = np.asarray(corners_a, dtype=np.float64)[:, None, :]
    b = np.asarray(corners_b, dtype=np.float64)[None, :, :]
    iw = np.minimum(a[..., 2], b[..., 2]) - np.maximum(a[..., 0], b[..., 0])
    ih = np.minimum(a[..., 3], b[..., 3]) - np.maximum(a[..., 1], b[..., 1])
    inter = np.clip(iw, 0.0, None) * np.clip(ih, 0.0, None)
    h_a = a[..., 3] - a[..., 1]
    h_b = b[..., 3] - b[..., 1]
    area_a = (a[..., 2] - a[..., 0]) * h_a
    area_b = (b[..., 2] - b[..., 0]) * h_b
    dist = 1.0 - inter / (area_a + area_b - inter)
    eps = params.epsilon
    if params.use_height_term or params.use_area_term:
        enclosing_h = np.maximum(a[..., 3], b[..., 3]) - np.minimum(a[..., 1], b[..., 1])
        if params.use_height_term:
            dist = dist + (h_a - h_b) ** 2 / (enclosing_h + eps) ** 2
        if params.use_area_term:
            enclosing_w = np.maximum(a[..., 2], b[..., 2]) - np.minimum(a[..., 0], b[..., 0])
            enclosing_area = enclosing_w * enclosing_h
            dist = dist + (area_a - area_b) ** 2 / (enclosing_area + eps) ** 2
    return dist


def iou(b1: BoundingBox, b2: BoundingBox) -> float:
    """Intersection-over-union of two boxes, in [0, 1]."""
    return float(pairwise_iou(boxes_to_corners([b1]), boxes_to_corners([b2]))[0, 0])


def shape_iou_distance(
    b1: BoundingBox,
    b2: BoundingBox,
    params: ShapeIoUParams = ShapeIoUParams(),
) -> float:
    """Shape-aware IoU distance between two boxes, in [0, 3]."""
    return float(
        pairwise_shape_iou_distance(boxes_to_corners([b1]), boxes_to_corners([b2]), params)[0, 0]
    )


def cost_matrix(tracks, detections, params: ShapeIoUParams = ShapeIoUParams()) -> np.ndarray:
    """Pairwise distance matrix between track boxes (rows) and detection boxes (cols).

    Either list may be empty; the result always has shape
    ``(len(tracks), len(detections))``.  Entries agree bitwise with
    :func:`shape_iou_distance` evaluated pairwise.
    """
    return pairwise_shape_iou_distance(
        boxes_to_corners(list(tracks)), boxes_to_corners(list(detections)), params
    )
