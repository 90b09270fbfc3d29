"""
Max-IoU matching of proposals to ground truths and label assignment.

Static assignment has a positive threshold and a negative threshold with an
ignore band between them; dynamic assignment uses one moving threshold and
never ignores.
"""
from collections.abc import Sequence
from enum import IntEnum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..geometry.iou import boxes_to_array, pairwise_iou
from ..models.boxes import Box

NO_MATCH = -1


class Label(IntEnum):
    """Classification label of a proposal."""

    POSITIVE = 1
    NEGATIVE = 0
    IGNORED = -1


class MatchResult(BaseModel):
    """Best ground truth for one proposal."""

    model_config = ConfigDict(frozen=True)

    max_iou: float = Field(..., ge=0.0, le=1.0, description="Max IoU over ground truths")
    gt_index: int | None = Field(default=None, description="Argmax ground truth, None if no gts")


def match_arrays(proposals: np.ndarray, gts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Array form of match.

    Args:
        proposals: (N, 4) proposal corners
        gts: (M, 4) ground-truth corners

    Returns:
        (max_iou (N,), gt_index (N,)) with NO_MATCH where M == 0;
        ties resolve to the lowest ground-truth index
    """
    n = len(proposals)
    if len(gts) == 0:
        return np.zeros(n, dtype=np.float64), np.full(n, NO_MATCH, dtype=np.int64)
    overlaps = pairwise_iou(proposals, gts)
    gt_index = np.argmax(overlaps, axis=1)
    max_iou = overlaps[np.arange(n), gt_index]
    return max_iou, gt_index.astype(np.int64)


def match(proposals: Sequence[Box], gts: Sequence[Box]) -> list[MatchResult]:
    """Match every proposal to its max-IoU ground truth."""
    max_iou, gt_index = match_arrays(boxes_to_array(proposals), boxes_to_array(gts))
    return [
        MatchResult(max_iou=float(v), gt_index=None if g == NO_MATCH else int(g))
        for v, g in zip(max_iou, gt_index)
    ]


def _check_threshold(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


def assign_static_array(
    max_iou: np.ndarray, gt_index: np.ndarray, t_pos: float, t_neg: float
) -> np.ndarray:
    """Array form of assign_static; returns int labels (1, 0, -1)."""
    _check_threshold("t_pos", t_pos)
    _check_threshold("t_neg", t_neg)
    if t_neg > t_pos:
        raise ValueError(f"t_neg ({t_neg}) must not exceed t_pos ({t_pos})")
    labels = np.full(len(max_iou), int(Label.IGNORED), dtype=np.int64)
    labels[max_iou >= t_pos] = Label.POSITIVE
    labels[max_iou < t_neg] = Label.NEGATIVE
    labels[gt_index == NO_MATCH] = Label.NEGATIVE
    return labels


def assign_dynamic_array(max_iou: np.ndarray, gt_index: np.ndarray, t_now: float) -> np.ndarray:
    """Array form of assign_dynamic; returns int labels (1, 0)."""
    _check_threshold("t_now", t_now)
    labels = np.where(max_iou >= t_now, int(Label.POSITIVE), int(Label.NEGATIVE)).astype(np.int64)
    labels[gt_index == NO_MATCH] = Label.NEGATIVE
    return labels


def unpack_matches(matches: Sequence[MatchResult]) -> tuple[np.ndarray, np.ndarray]:
    max_iou = np.array([m.max_iou for m in matches], dtype=np.float64)
    gt_index = np.array(
        [NO_MATCH if m.gt_index is None else m.gt_index for m in matches], dtype=np.int64
    )
    return max_iou, gt_index


def assign_static(matches: Sequence[MatchResult], t_pos: float, t_neg: float) -> list[Label]:
    """
    Fixed-threshold assignment with an ignore band.

    Positive if max_iou >= t_pos, negative if max_iou < t_neg, ignored otherwise.
    Proposals with no ground truth are negative.

    Raises:
        ValueError: If t_neg > t_pos or a threshold lies outside [0, 1]
    """
    max_iou, gt_index = unpack_matches(matches)
    return [Label(int(v)) for v in assign_static_array(max_iou, gt_index, t_pos, t_neg)]


def assign_dynamic(matches: Sequence[MatchResult], t_now: float) -> list[Label]:
    """Moving-threshold assignment: positive iff max_iou >= t_now, else negative."""
    max_iou, gt_index = unpack_matches(matches)
    return [Label(int(v)) for v in assign_dynamic_array(max_iou, gt_index, t_now)]
