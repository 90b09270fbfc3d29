"""Positive counts and regression-label spread of a proposal set."""
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, Field

from ..assignment.matcher import NO_MATCH, match_arrays
from ..geometry.coder import encode_array
from ..geometry.iou import boxes_to_array
from ..models.boxes import Box
from ..models.trend import ThresholdLabelStats

DEFAULT_COUNT_THRESHOLDS = (0.5, 0.6, 0.7)

BoxesLike = Sequence[Box] | np.ndarray


class PositiveCountStats(BaseModel):
    """Counts per threshold plus label spread at the lowest threshold."""

    counts: dict[float, int] = Field(default_factory=dict, description="Threshold -> positives")
    mean_dx: float | None = Field(default=None)
    mean_dw: float | None = Field(default=None)
    std_dx: float | None = Field(default=None)
    std_dw: float | None = Field(default=None)


def _as_array(boxes: BoxesLike) -> np.ndarray:
    if isinstance(boxes, np.ndarray):
        return boxes.reshape(-1, 4).astype(np.float64, copy=False)
    return boxes_to_array(boxes)


def summarize_labels(
    iou: np.ndarray, dx: np.ndarray, dw: np.ndarray, threshold: float
) -> ThresholdLabelStats:
    """
    Label spread of the entries whose IoU clears threshold.

    iou, dx and dw are aligned per proposal; stdevs use ddof=1.
    """
    positive = iou >= threshold
    count = int(positive.sum())
    stats = ThresholdLabelStats(threshold=threshold, count=count)
    if count == 0:
        return stats
    stats.mean_dx = float(dx[positive].mean())
    stats.mean_dw = float(dw[positive].mean())
    if count >= 2:
        stats.std_dx = float(dx[positive].std(ddof=1))
        stats.std_dw = float(dw[positive].std(ddof=1))
    return stats


def label_stats_by_threshold(
    proposals: BoxesLike,
    gts: BoxesLike,
    thresholds: Sequence[float] = DEFAULT_COUNT_THRESHOLDS,
) -> list[ThresholdLabelStats]:
    """
    Positive count and raw dx/dw spread at each threshold.

    Args:
        proposals: Proposal boxes
        gts: Ground-truth boxes
        thresholds: IoU thresholds, reported in the given order

    Returns:
        One ThresholdLabelStats per threshold
    """
    proposal_array = _as_array(proposals)
    gt_array = _as_array(gts)
    max_iou, gt_index = match_arrays(proposal_array, gt_array)
    matched = gt_index != NO_MATCH
    offsets = np.zeros((len(proposal_array), 4))
    if matched.any():
        offsets[matched] = encode_array(proposal_array[matched], gt_array[gt_index[matched]])
    iou = np.where(matched, max_iou, -np.inf)
    return [summarize_labels(iou, offsets[:, 0], offsets[:, 2], float(t)) for t in thresholds]


def positive_count_stats(
    proposals: BoxesLike,
    gts: BoxesLike,
    thresholds: Sequence[float] = DEFAULT_COUNT_THRESHOLDS,
) -> PositiveCountStats:
    """
    Count proposals clearing each IoU threshold.

    The dx/dw mean and sample stdev are taken over the positives at the lowest
    threshold; stdevs are absent with fewer than two positives.
    """
    if not thresholds:
        return PositiveCountStats()
    per_threshold = label_stats_by_threshold(proposals, gts, thresholds)
    lowest = min(per_threshold, key=lambda s: s.threshold)
    return PositiveCountStats(
        counts={s.threshold: s.count for s in per_threshold},
        mean_dx=lowest.mean_dx,
        mean_dw=lowest.mean_dw,
        std_dx=lowest.std_dx,
        std_dw=lowest.std_dw,
    )
