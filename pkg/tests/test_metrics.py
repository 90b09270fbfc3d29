"""NMS, COCO-style AP and proposal statistics tests."""
import math

import numpy as np
import pytest

from src.geometry import iou
from src.metrics import (
    average_precision,
    coco_map,
    coco_map_multi,
    label_stats_by_threshold,
    nms,
    nms_arrays,
    positive_count_stats,
    report_from_arrays,
)
from src.models.boxes import Box
from src.models.detection import COCO_IOU_THRESHOLDS, Detection


def _det(x1, y1, x2, y2, score) -> Detection:
    return Detection(box=Box(x1=x1, y1=y1, x2=x2, y2=y2), score=score)


def _random_boxes(rng: np.random.Generator, n: int, extent: float = 20.0) -> list[Box]:
    result = []
    for _ in range(n):
        x1, y1 = rng.uniform(0, extent, size=2)
        w, h = rng.uniform(2, extent / 2, size=2)
        result.append(Box(x1=x1, y1=y1, x2=x1 + w, y2=y1 + h))
    return result


def _naive_nms(dets: list[Detection], threshold: float) -> list[int]:
    order = sorted(range(len(dets)), key=lambda i: -dets[i].score)
    kept: list[int] = []
    for i in order:
        if all(iou(dets[i].box, dets[k].box) < threshold for k in kept):
            kept.append(i)
    return kept


def _naive_ap(dets: list[Detection], gts: list[Box], threshold: float) -> float:
    """Greedy matching plus area under the interpolated precision/recall curve."""
    if not gts:
        return 1.0 if not dets else 0.0
    order = sorted(range(len(dets)), key=lambda i: -dets[i].score)
    taken = [False] * len(gts)
    recalls, precisions = [], []
    hits = 0
    for rank, i in enumerate(order, start=1):
        best, best_iou = None, -1.0
        for g, gt in enumerate(gts):
            value = iou(dets[i].box, gt)
            if not taken[g] and value > best_iou:
                best, best_iou = g, value
        if best is not None and best_iou >= threshold:
            taken[best] = True
            hits += 1
        recalls.append(hits / len(gts))
        precisions.append(hits / rank)
    area, previous = 0.0, 0.0
    for level in sorted(set(recalls)):
        if level == 0.0:
            continue
        best_precision = max(p for r, p in zip(recalls, precisions) if r >= level)
        area += (level - previous) * best_precision
        previous = level
    return area


class TestNMS:
    """Tests for greedy suppression."""

    def test_suppresses_overlapping_lower_score(self):
        dets = [
            _det(0, 0, 10, 10, 0.9),
            _det(1, 0, 11, 10, 0.8),
            _det(50, 50, 60, 60, 0.7),
        ]
        assert nms(dets, 0.5) == [0, 2]

    def test_keeps_boxes_below_threshold(self, unit_box, shifted_box):
        dets = [Detection(box=unit_box, score=0.4), Detection(box=shifted_box, score=0.6)]
        assert nms(dets, 0.5) == [1, 0]

    def test_boundary_overlap_is_suppressed(self, unit_box, shifted_box):
        dets = [Detection(box=unit_box, score=0.9), Detection(box=shifted_box, score=0.8)]
        assert nms(dets, 1.0 / 3.0) == [0]

    def test_score_ties_keep_input_order(self, unit_box):
        dets = [Detection(box=unit_box, score=0.5), Detection(box=unit_box, score=0.5)]
        assert nms(dets, 0.7) == [0]

    def test_threshold_one_keeps_distinct_boxes(self, sample_gts):
        dets = [Detection(box=b, score=0.5) for b in sample_gts]
        assert nms(dets, 1.0) == [0, 1, 2]

    def test_empty_input(self):
        assert nms([], 0.5) == []
        assert nms_arrays(np.zeros((0, 4)), np.zeros(0), 0.5).tolist() == []

    @pytest.mark.parametrize("threshold", [0.0, -0.1, 1.5])
    def test_rejects_threshold_outside_range(self, threshold):
        with pytest.raises(ValueError, match="iou_threshold"):
            nms_arrays(np.zeros((0, 4)), np.zeros(0), threshold)

    def test_matches_naive_reference(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            n = int(rng.integers(1, 15))
            scores = rng.choice([0.1, 0.3, 0.5, 0.7, 0.9], size=n)
            dets = [
                Detection(box=b, score=float(s))
                for b, s in zip(_random_boxes(rng, n), scores)
            ]
            threshold = float(rng.uniform(0.05, 1.0))
            assert nms(dets, threshold) == _naive_nms(dets, threshold)


class TestAveragePrecision:
    """Tests for single-threshold AP and the COCO report."""

    def test_hand_fixture(self):
        gts = [Box(x1=0, y1=0, x2=10, y2=10), Box(x1=20, y1=20, x2=30, y2=30)]
        dets = [
            _det(0, 0, 10, 10, 0.9),
            _det(50, 50, 60, 60, 0.8),
            _det(20, 20, 30, 30, 0.7),
        ]
        report = coco_map(dets, gts)
        for threshold in COCO_IOU_THRESHOLDS:
            assert report.at(threshold) == pytest.approx(5.0 / 6.0)
        assert report.mean_ap == pytest.approx(5.0 / 6.0)

    def test_perfect_detections(self, sample_gts):
        dets = [Detection(box=b, score=0.9 - 0.1 * i) for i, b in enumerate(sample_gts)]
        report = coco_map(dets, sample_gts)
        assert report.mean_ap == 1.0
        assert report.ap90 == 1.0

    def test_duplicate_after_match_is_false_positive(self, unit_box):
        dets = [Detection(box=unit_box, score=0.9), Detection(box=unit_box, score=0.8)]
        assert average_precision(dets, [unit_box], 0.5) == 1.0
        dets = [Detection(box=unit_box, score=0.8), Detection(box=unit_box, score=0.9)]
        assert average_precision(dets, [unit_box], 0.5) == 1.0

    def test_false_positive_ranked_first_halves_ap(self, unit_box):
        far = Box(x1=5.0, y1=5.0, x2=6.0, y2=6.0)
        dets = [Detection(box=far, score=0.9), Detection(box=unit_box, score=0.8)]
        assert average_precision(dets, [unit_box], 0.5) == pytest.approx(0.5)

    def test_overlap_below_threshold_is_miss(self, unit_box, shifted_box):
        dets = [Detection(box=shifted_box, score=0.9)]
        assert average_precision(dets, [unit_box], 0.3) == 1.0
        assert average_precision(dets, [unit_box], 0.5) == 0.0

    def test_empty_inputs(self, unit_box):
        assert average_precision([], [unit_box], 0.5) == 0.0
        assert average_precision([Detection(box=unit_box, score=0.5)], [], 0.5) == 0.0
        assert average_precision([], [], 0.5) == 1.0

    def test_rejects_threshold_outside_range(self, unit_box):
        with pytest.raises(ValueError):
            average_precision([], [unit_box], 0.0)

    def test_report_has_ten_thresholds(self, sample_gts):
        report = coco_map([Detection(box=sample_gts[0], score=0.5)], sample_gts)
        assert list(report.ap) == [f"{t:.2f}" for t in COCO_IOU_THRESHOLDS]
        assert report.mean_ap == pytest.approx(sum(report.ap.values()) / 10)
        assert all(value == pytest.approx(1.0 / 3.0) for value in report.ap.values())

    def test_matches_brute_force_on_small_inputs(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            gts = _random_boxes(rng, int(rng.integers(0, 6)))
            n = int(rng.integers(0, 6))
            scores = rng.choice([0.2, 0.5, 0.8], size=n)
            dets = [
                Detection(box=b, score=float(s))
                for b, s in zip(_random_boxes(rng, n), scores)
            ]
            threshold = float(rng.choice(COCO_IOU_THRESHOLDS))
            expected = _naive_ap(dets, gts, threshold)
            assert average_precision(dets, gts, threshold) == pytest.approx(expected, abs=1e-12)

    def test_score_scaling_leaves_report_unchanged(self):
        rng = np.random.default_rng(4)
        gts = _random_boxes(rng, 5, extent=60.0)
        dets = [
            Detection(box=b, score=float(s))
            for b, s in zip(_random_boxes(rng, 12, extent=60.0), rng.uniform(0.1, 1.0, size=12))
        ]
        scaled = [Detection(box=d.box, score=d.score * 0.5) for d in dets]
        assert coco_map(scaled, gts) == coco_map(dets, gts)

    def test_ap_non_increasing_in_threshold_for_separated_objects(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            gts, dets = [], []
            for cell in range(6):
                cx, cy = 100.0 * cell + 50.0, 50.0
                w, h = rng.uniform(20, 40, size=2)
                gts.append(Box.from_center(cx, cy, w, h))
                for _ in range(int(rng.integers(0, 4))):
                    jitter = rng.uniform(-5, 5, size=2)
                    scale = rng.uniform(0.8, 1.25, size=2)
                    box = Box.from_center(
                        cx + jitter[0], cy + jitter[1], w * scale[0], h * scale[1]
                    )
                    dets.append(Detection(box=box, score=float(rng.uniform())))
            values = list(coco_map(dets, gts).ap.values())
            assert all(a >= b for a, b in zip(values, values[1:]))

    def test_ap_non_increasing_in_threshold_on_random_instances(self):
        rng = np.random.default_rng(21)
        for _ in range(300):
            gts = _random_boxes(rng, int(rng.integers(1, 6)))
            n = int(rng.integers(0, 6))
            dets = [
                Detection(box=b, score=float(s))
                for b, s in zip(_random_boxes(rng, n), rng.uniform(size=n))
            ]
            values = list(coco_map(dets, gts).ap.values())
            assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))

    def test_pooled_report_ranks_across_images(self, unit_box):
        far = Box(x1=5.0, y1=5.0, x2=6.0, y2=6.0)
        images = [
            ([Detection(box=far, score=0.9)], [unit_box]),
            ([Detection(box=unit_box, score=0.8)], [unit_box]),
        ]
        report = coco_map_multi(images)
        # ranks: FP (image 0), TP (image 1); two ground truths
        assert report.ap50 == pytest.approx(0.25)

    def test_report_from_arrays_matches_object_form(self, sample_gts):
        det_boxes = np.array([b.to_list() for b in sample_gts])
        scores = np.array([0.3, 0.9, 0.6])
        report = report_from_arrays([(det_boxes, scores, det_boxes.copy())])
        dets = [Detection(box=b, score=float(s)) for b, s in zip(sample_gts, scores)]
        assert report == coco_map(dets, sample_gts)


class TestProposalStats:
    """Tests for positive counts and label spread."""

    def test_counts_and_spread(self, unit_box, shifted_box):
        nudged = Box(x1=0.1, y1=0.0, x2=1.1, y2=1.0)
        stats = label_stats_by_threshold([unit_box, shifted_box, nudged], [unit_box], (0.5, 0.9))
        assert [s.count for s in stats] == [2, 1]
        assert stats[0].mean_dx == pytest.approx(-0.05)
        assert stats[0].std_dx == pytest.approx(0.1 / math.sqrt(2.0))
        assert stats[0].std_dw == pytest.approx(0.0)
        assert stats[1].std_dx is None

    def test_no_positives(self, unit_box):
        far = Box(x1=5.0, y1=5.0, x2=6.0, y2=6.0)
        [stats] = label_stats_by_threshold([far], [unit_box], (0.5,))
        assert stats.count == 0
        assert stats.mean_dx is None and stats.std_dx is None

    def test_positive_count_stats_uses_lowest_threshold(self, sample_gts):
        stats = positive_count_stats(sample_gts, sample_gts)
        assert stats.counts == {0.5: 3, 0.6: 3, 0.7: 3}
        assert stats.mean_dx == 0.0 and stats.std_dx == 0.0

    def test_accepts_arrays(self, sample_gts):
        array = np.array([b.to_list() for b in sample_gts])
        assert positive_count_stats(array, array).counts[0.7] == 3

    def test_counts_non_increasing_in_threshold(self, rng):
        gts = _random_boxes(rng, 4, extent=80.0)
        proposals = _random_boxes(rng, 200, extent=80.0)
        stats = positive_count_stats(proposals, gts)
        assert stats.counts[0.5] >= stats.counts[0.6] >= stats.counts[0.7]

    def test_empty_thresholds(self, sample_gts):
        assert positive_count_stats(sample_gts, sample_gts, ()).counts == {}
