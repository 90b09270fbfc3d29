"""
Intersection-over-union for axis-aligned boxes.
Scalar and array forms evaluate the same expressions in the same order,
so they agree bit for bit.
"""
from collections.abc import Sequence

import numpy as np

from ..models.boxes import Box


def boxes_to_array(boxes: Sequence[Box]) -> np.ndarray:
    """Stack boxes into an (N, 4) float array of corners."""
    if len(boxes) == 0:
        return np.zeros((0, 4), dtype=np.float64)
    return np.array([b.to_list() for b in boxes], dtype=np.float64)


def array_to_boxes(array: np.ndarray) -> list[Box]:
    """Convert an (N, 4) corner array into validated boxes."""
    return [Box(x1=float(r[0]), y1=float(r[1]), x2=float(r[2]), y2=float(r[3])) for r in array]


def box_areas(array: np.ndarray) -> np.ndarray:
    return (array[:, 2] - array[:, 0]) * (array[:, 3] - array[:, 1])


def iou(a: Box, b: Box) -> float:
    """
    Intersection area over union area of two boxes.

    Args:
        a: First box
        b: Second box

    Returns:
        IoU in [0, 1]; symmetric in its arguments
    """
    inter_w = max(0.0, min(a.x2, b.x2) - max(a.x1, b.x1))
    inter_h = max(0.0, min(a.y2, b.y2) - max(a.y1, b.y1))
    inter = inter_w * inter_h
    area_a = (a.x2 - a.x1) * (a.y2 - a.y1)
    area_b = (b.x2 - b.x1) * (b.y2 - b.y1)
    return inter / (area_a + area_b - inter)


def pairwise_iou(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    IoU matrix between two box arrays.

    Args:
        a: (N, 4) corners
        b: (M, 4) corners

    Returns:
        (N, M) IoU matrix
    """
    if len(a) == 0 or len(b) == 0:
        return np.zeros((len(a), len(b)), dtype=np.float64)
    inter_w = np.maximum(
        0.0, np.minimum(a[:, None, 2], b[None, :, 2]) - np.maximum(a[:, None, 0], b[None, :, 0])
    )
    inter_h = np.maximum(
        0.0, np.minimum(a[:, None, 3], b[None, :, 3]) - np.maximum(a[:, None, 1], b[None, :, 1])
    )
    inter = inter_w * inter_h
    union = box_areas(a)[:, None] + box_areas(b)[None, :] - inter
    return inter / union
