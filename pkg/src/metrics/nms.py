"""Greedy non-maximum suppression."""
from collections.abc import Sequence

import numpy as np

from ..geometry.iou import boxes_to_array, pairwise_iou
from ..models.detection import Detection


def nms_arrays(boxes: np.ndarray, scores: np.ndarray, iou_threshold: float) -> np.ndarray:
    """
    Keep the best-scoring box, drop every box overlapping it by IoU >= threshold, repeat.

    Args:
        boxes: (N, 4) corners
        scores: (N,) confidences
        iou_threshold: Suppression threshold in (0, 1]

    Returns:
        Kept indices in greedy (score-descending) order; score ties keep input order
    """
    if not 0.0 < iou_threshold <= 1.0:
        raise ValueError(f"iou_threshold must lie in (0, 1], got {iou_threshold}")
    order = np.argsort(-np.asarray(scores, dtype=np.float64), kind="stable")
    keep: list[int] = []
    while order.size > 0:
        best = int(order[0])
        keep.append(best)
        rest = order[1:]
        if rest.size == 0:
            break
        overlaps = pairwise_iou(boxes[best : best + 1], boxes[rest])[0]
        order = rest[overlaps < iou_threshold]
    return np.array(keep, dtype=np.int64)


def nms(dets: Sequence[Detection], iou_threshold: float) -> list[int]:
    """NMS over Detection records; returns kept indices."""
    boxes = boxes_to_array([d.box for d in dets])
    scores = np.array([d.score for d in dets], dtype=np.float64)
    return [int(i) for i in nms_arrays(boxes, scores, iou_threshold)]
