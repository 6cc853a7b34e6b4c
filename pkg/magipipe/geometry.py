"""Axis-aligned boxes and the tolerant comparisons used to order them.

Coordinates are image pixels, the origin is the top-left corner of the page
and y grows downwards.
"""
import math
from dataclasses import dataclass
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

DEFAULT_EPSILON_FRACTION = 0.001
DEFAULT_EROSION_STEP_FRACTION = 0.005
DEFAULT_MAX_EROSION_ITERS = 50


@dataclass(frozen=True)
class Box:
    """Axis-aligned rectangle ``(x1, y1, x2, y2)`` with ``x1 <= x2`` and ``y1 <= y2``.

    Raises:
        ValueError: a coordinate is not finite, is negative or the corners are inverted.
    """

    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self):
        coords = (self.x1, self.y1, self.x2, self.y2)
        if not all(math.isfinite(c) for c in coords):
            raise ValueError(f"Box coordinates must be finite, got {coords}")
        if min(coords) < 0:
            raise ValueError(f"Box coordinates must be non negative, got {coords}")
        if self.x1 > self.x2 or self.y1 > self.y2:
            raise ValueError(f"Box corners are inverted: {coords}")

    @classmethod
    def from_list(cls, coords: Sequence[float]) -> "Box":
        x1, y1, x2, y2 = (float(c) for c in coords)
        return cls(x1, y1, x2, y2)

    def to_list(self):
        return [self.x1, self.y1, self.x2, self.y2]

    @property
    def width(self) -> float:
        return self.x2 - self.x1

    @property
    def height(self) -> float:
        return self.y2 - self.y1

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> Tuple[float, float]:
        return (self.x1 + self.x2) / 2, (self.y1 + self.y2) / 2

    def clamp(self, width: float, height: float) -> "Box":
        """Clip the box to the page ``[0, width] x [0, height]``."""
        return Box(
            min(max(self.x1, 0.0), width),
            min(max(self.y1, 0.0), height),
            min(max(self.x2, 0.0), width),
            min(max(self.y2, 0.0), height),
        )


@dataclass(frozen=True)
class Tolerance:
    """Slack used by every geometric predicate of a page.

    Args:
        epsilon (float): slack of the strict comparisons, in pixels
        erosion_step (float): amount removed from each side of a box at every erosion iteration
        max_erosion_iters (int): maximum number of erosion iterations
        erode_overlapping_pairs (bool): erode intersecting panel pairs before comparing them.
            Defaults to True.
    """

    epsilon: float
    erosion_step: float
    max_erosion_iters: int
    erode_overlapping_pairs: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and self.epsilon >= 0):
            raise ValueError(f"epsilon must be finite and non negative, got {self.epsilon}")
        if not (math.isfinite(self.erosion_step) and self.erosion_step > 0):
            raise ValueError(f"erosion_step must be finite and positive, got {self.erosion_step}")
        if self.max_erosion_iters < 1:
            raise ValueError(f"max_erosion_iters must be at least 1, got {self.max_erosion_iters}")

    @classmethod
    def for_page(
        cls,
        width: float,
        height: float,
        epsilon_fraction: float = DEFAULT_EPSILON_FRACTION,
        erosion_step_fraction: float = DEFAULT_EROSION_STEP_FRACTION,
        max_erosion_iters: int = DEFAULT_MAX_EROSION_ITERS,
        erode_overlapping_pairs: bool = True,
    ) -> "Tolerance":
        """Page relative tolerance: epsilon is a fraction of the page diagonal, the erosion step a
        fraction of the shorter page side.
        """
        return cls(
            epsilon=epsilon_fraction * math.hypot(width, height),
            erosion_step=erosion_step_fraction * min(width, height),
            max_erosion_iters=max_erosion_iters,
            erode_overlapping_pairs=erode_overlapping_pairs,
        )


def intersection_area(a: Box, b: Box) -> float:
    w = min(a.x2, b.x2) - max(a.x1, b.x1)
    h = min(a.y2, b.y2) - max(a.y1, b.y1)
    if w <= 0 or h <= 0:
        return 0.0
    return w * h


def iou(a: Box, b: Box) -> float:
    """Intersection over union, 0 when the union is empty."""
    inter = intersection_area(a, b)
    union = a.area + b.area - inter
    if union <= 0:
        return 0.0
    return inter / union


def box_iou_matrix(a_boxes: Sequence[Box], b_boxes: Sequence[Box]) -> np.ndarray:
    """Pairwise IoU, shape ``(len(a_boxes), len(b_boxes))``."""
    if len(a_boxes) == 0 or len(b_boxes) == 0:
        return np.zeros((len(a_boxes), len(b_boxes)))
    a = np.array([box.to_list() for box in a_boxes], dtype=float)
    b = np.array([box.to_list() for box in b_boxes], dtype=float)

    w = np.minimum(a[:, None, 2], b[None, :, 2]) - np.maximum(a[:, None, 0], b[None, :, 0])
    h = np.minimum(a[:, None, 3], b[None, :, 3]) - np.maximum(a[:, None, 1], b[None, :, 1])
    inter = np.clip(w, 0, None) * np.clip(h, 0, None)
    area_a = (a[:, 2] - a[:, 0]) * (a[:, 3] - a[:, 1])
    area_b = (b[:, 2] - b[:, 0]) * (b[:, 3] - b[:, 1])
    union = area_a[:, None] + area_b[None, :] - inter
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(union > 0, inter / np.where(union > 0, union, 1.0), 0.0)


def is_strictly_above(a: Box, b: Box, tol: Tolerance) -> bool:
    """``a`` ends above the top of ``b``, up to epsilon."""
    return a.y2 <= b.y1 + tol.epsilon


def is_strictly_right_of(a: Box, b: Box, tol: Tolerance) -> bool:
    """``a`` starts right of the right side of ``b``, up to epsilon."""
    return a.x1 >= b.x2 - tol.epsilon


def separated_vertically(a: Box, b: Box, tol: Tolerance) -> bool:
    return is_strictly_above(a, b, tol) or is_strictly_above(b, a, tol)


def separated_horizontally(a: Box, b: Box, tol: Tolerance) -> bool:
    return is_strictly_right_of(a, b, tol) or is_strictly_right_of(b, a, tol)


def are_separated(a: Box, b: Box, tol: Tolerance) -> bool:
    """At least one strict predicate holds in one direction."""
    return separated_vertically(a, b, tol) or separated_horizontally(a, b, tol)


def erode(b: Box, step: float) -> Box:
    """Move every side of ``b`` inwards by ``step``, never past the center.

    Raises:
        ValueError: ``step`` is not positive.
    """
    if step <= 0:
        raise ValueError(f"The erosion step must be positive, got {step}")
    cx, cy = b.center
    return Box(
        min(b.x1 + step, cx),
        min(b.y1 + step, cy),
        max(b.x2 - step, cx),
        max(b.y2 - step, cy),
    )


def erode_pair_until_disjoint(a: Box, b: Box, tol: Tolerance) -> Optional[Tuple[Box, Box]]:
    """Erode both boxes by the same step until they no longer intersect.

    A pair whose intersection area is already below ``epsilon ** 2`` is returned unchanged.

    Returns:
        typing.Optional[typing.Tuple[Box, Box]]: the eroded pair, None when the iteration cap is
        reached or when a box collapses while the pair is still overlapping (containment).
    """
    threshold = tol.epsilon**2
    if intersection_area(a, b) <= threshold:
        return a, b

    for _ in range(tol.max_erosion_iters):
        a = erode(a, tol.erosion_step)
        b = erode(b, tol.erosion_step)
        if a.area == 0 or b.area == 0:
            if are_separated(a, b, tol):
                return a, b
            return None
        if intersection_area(a, b) <= threshold:
            return a, b
    return None


def _required_erosion(low_end: float, high_start: float, tol: Tolerance) -> int:
    """Number of erosion steps after which an interval ending at ``low_end`` no longer overlaps one
    starting at ``high_start`` by more than epsilon."""
    overlap = low_end - high_start - tol.epsilon
    if overlap <= 0:
        return 0
    return max(1, math.ceil(overlap / (2 * tol.erosion_step)))


def erode_pair_until_diagonal(a: Box, b: Box, tol: Tolerance) -> Optional[Tuple[Box, Box]]:
    """Erode a pair separated along exactly one axis until it is separated along both.

    Panels that are only "largely" below or beside each other (their other coordinates overlap
    by a small amount) are compared by their eroded version.

    Returns:
        typing.Optional[typing.Tuple[Box, Box]]: the eroded pair, None when the pair is not
        separated along exactly one axis, when a box collapses or when the cap is reached.
    """
    vertical = separated_vertically(a, b, tol)
    horizontal = separated_horizontally(a, b, tol)
    if vertical == horizontal:
        return None

    if vertical:
        left, right = (a, b) if a.center[0] <= b.center[0] else (b, a)
        k = _required_erosion(left.x2, right.x1, tol)
    else:
        top, bottom = (a, b) if a.center[1] <= b.center[1] else (b, a)
        k = _required_erosion(top.y2, bottom.y1, tol)

    if k == 0 or k > tol.max_erosion_iters:
        return None
    a_eroded = erode(a, k * tol.erosion_step)
    b_eroded = erode(b, k * tol.erosion_step)
    if a_eroded.area == 0 or b_eroded.area == 0:
        return None
    if not (separated_vertically(a_eroded, b_eroded, tol) and separated_horizontally(a_eroded, b_eroded, tol)):
        return None
    return a_eroded, b_eroded
