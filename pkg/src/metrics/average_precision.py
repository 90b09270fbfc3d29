"""
Single-class COCO-style average precision.

Detections are ranked by score (ties in input order) and greedily matched to
the best still-unmatched ground truth with IoU >= threshold. AP is the exact
area under the precision/recall staircase after making precision monotone
from the right; no 101-point sampling.
"""
from collections.abc import Sequence

import numpy as np

from ..geometry.iou import boxes_to_array, pairwise_iou
from ..models.boxes import Box
from ..models.detection import COCO_IOU_THRESHOLDS, Detection, EvalReport, threshold_key

ImageArrays = tuple[np.ndarray, np.ndarray, np.ndarray]


def _check_threshold(iou_threshold: float) -> None:
    if not 0.0 < iou_threshold <= 1.0:
        raise ValueError(f"iou_threshold must lie in (0, 1], got {iou_threshold}")


def match_ranked(
    det_boxes: np.ndarray, scores: np.ndarray, gt_boxes: np.ndarray, iou_threshold: float
) -> tuple[np.ndarray, np.ndarray]:
    """
    Greedy matching for one image.

    Returns:
        (scores in rank order, true-positive flags in rank order)
    """
    order = np.argsort(-scores, kind="stable")
    ranked_scores = scores[order]
    tp = np.zeros(len(order), dtype=bool)
    if len(gt_boxes) == 0 or len(order) == 0:
        return ranked_scores, tp
    overlaps = pairwise_iou(det_boxes[order], gt_boxes)
    taken = np.zeros(len(gt_boxes), dtype=bool)
    for rank in range(len(order)):
        candidates = np.where(taken, -1.0, overlaps[rank])
        best = int(np.argmax(candidates))
        if candidates[best] >= iou_threshold:
            taken[best] = True
            tp[rank] = True
    return ranked_scores, tp


def ap_from_ranked(tp: np.ndarray, n_gt: int) -> float:
    """AP of a ranked true-positive sequence against n_gt ground truths."""
    if n_gt == 0:
        return 1.0 if len(tp) == 0 else 0.0
    if len(tp) == 0:
        return 0.0
    tp_cum = np.cumsum(tp)
    precision = tp_cum / np.arange(1, len(tp) + 1)
    precision = np.maximum.accumulate(precision[::-1])[::-1]
    # recall grows by 1/n_gt at each true positive
    return float(precision[tp].sum() / n_gt)


def _pooled_ap(images: Sequence[ImageArrays], iou_threshold: float) -> float:
    _check_threshold(iou_threshold)
    all_scores, all_tp = [], []
    n_gt = 0
    for det_boxes, scores, gt_boxes in images:
        ranked_scores, tp = match_ranked(det_boxes, scores, gt_boxes, iou_threshold)
        all_scores.append(ranked_scores)
        all_tp.append(tp)
        n_gt += len(gt_boxes)
    scores = np.concatenate(all_scores) if all_scores else np.zeros(0)
    tp = np.concatenate(all_tp) if all_tp else np.zeros(0, dtype=bool)
    order = np.argsort(-scores, kind="stable")
    return ap_from_ranked(tp[order], n_gt)


def _to_arrays(dets: Sequence[Detection], gts: Sequence[Box]) -> ImageArrays:
    return (
        boxes_to_array([d.box for d in dets]),
        np.array([d.score for d in dets], dtype=np.float64),
        boxes_to_array(gts),
    )


def average_precision(dets: Sequence[Detection], gts: Sequence[Box], iou_threshold: float) -> float:
    """
    AP of one image's detections at one IoU threshold.

    Returns 0 when there are no detections but some ground truths, 0 when there
    are detections but no ground truths, and 1 when both are empty.
    """
    return _pooled_ap([_to_arrays(dets, gts)], iou_threshold)


def report_from_arrays(images: Sequence[ImageArrays]) -> EvalReport:
    """EvalReport over several images (per-image matching, global ranking)."""
    ap = {threshold_key(t): _pooled_ap(images, t) for t in COCO_IOU_THRESHOLDS}
    return EvalReport(ap=ap, mean_ap=float(np.mean(list(ap.values()))))


def coco_map(dets: Sequence[Detection], gts: Sequence[Box]) -> EvalReport:
    """AP at 0.50:0.05:0.95 for one image and their mean."""
    return report_from_arrays([_to_arrays(dets, gts)])


def coco_map_multi(images: Sequence[tuple[Sequence[Detection], Sequence[Box]]]) -> EvalReport:
    """AP at 0.50:0.05:0.95 pooled over several images."""
    return report_from_arrays([_to_arrays(dets, gts) for dets, gts in images])
