"""Matching, label assignment and batch sampling tests."""
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.assignment import (
    NO_MATCH,
    Label,
    MatchResult,
    assign_dynamic,
    assign_dynamic_array,
    assign_static,
    assign_static_array,
    match,
    match_arrays,
    positive_quota,
    sample_batch,
    sample_batch_arrays,
)
from src.geometry import boxes_to_array, encode_array, iou, normalize_array
from src.models.boxes import Box, DeltaStats


def _labels_and_matches(n_pos: int, n_neg: int, n_ignored: int = 0):
    labels = (
        [Label.POSITIVE] * n_pos + [Label.NEGATIVE] * n_neg + [Label.IGNORED] * n_ignored
    )
    return np.array([int(v) for v in labels]), np.zeros(len(labels), dtype=np.int64)


def _proposal_arrays(n: int, rng: np.random.Generator):
    xy = rng.uniform(0, 50, size=(n, 2))
    proposals = np.hstack((xy, xy + rng.uniform(5, 20, size=(n, 2))))
    gts = np.array([[10.0, 10.0, 30.0, 30.0]])
    return proposals, gts


class TestMatch:
    """Tests for max-IoU matching."""

    def test_match_identical_lists(self, sample_gts):
        results = match(sample_gts, sample_gts)
        assert [r.max_iou for r in results] == [1.0, 1.0, 1.0]
        assert [r.gt_index for r in results] == [0, 1, 2]

    def test_match_one_seventh_example(self):
        proposal = Box(x1=0.0, y1=0.0, x2=2.0, y2=2.0)
        gts = [Box(x1=1.0, y1=1.0, x2=3.0, y2=3.0), Box(x1=10.0, y1=10.0, x2=11.0, y2=11.0)]
        [result] = match([proposal], gts)
        assert result.max_iou == pytest.approx(1.0 / 7.0)
        assert result.gt_index == 0

    def test_match_empty_gts(self, sample_gts):
        results = match(sample_gts, [])
        assert all(r.max_iou == 0.0 and r.gt_index is None for r in results)

    def test_match_ties_resolve_to_lowest_index(self, unit_box):
        results = match([unit_box], [unit_box, unit_box])
        assert results[0].gt_index == 0

    def test_match_max_iou_equals_iou_with_matched_gt(self, sample_gts, rng):
        proposals, _ = _proposal_arrays(50, rng)
        max_iou, gt_index = match_arrays(proposals, boxes_to_array(sample_gts))
        for row, value, g in zip(proposals, max_iou, gt_index):
            box = Box.from_list(list(row))
            assert value == iou(box, sample_gts[g])
            assert value == max(iou(box, gt) for gt in sample_gts)

    def test_match_arrays_no_gts_uses_sentinel(self):
        max_iou, gt_index = match_arrays(np.array([[0.0, 0.0, 1.0, 1.0]]), np.zeros((0, 4)))
        assert max_iou.tolist() == [0.0]
        assert gt_index.tolist() == [NO_MATCH]


class TestAssignStatic:
    """Tests for fixed-threshold assignment."""

    def test_boundary_is_positive_by_default(self):
        assert assign_static([MatchResult(max_iou=0.5, gt_index=0)], 0.5, 0.5) == [Label.POSITIVE]

    def test_inside_band_is_ignored(self):
        assert assign_static([MatchResult(max_iou=0.6, gt_index=0)], 0.7, 0.3) == [Label.IGNORED]

    def test_zero_iou_is_negative(self):
        assert assign_static([MatchResult(max_iou=0.0, gt_index=0)], 0.7, 0.3) == [Label.NEGATIVE]

    def test_no_ground_truth_is_negative(self):
        assert assign_static([MatchResult(max_iou=0.0)], 0.0, 0.0) == [Label.NEGATIVE]

    def test_rejects_inverted_thresholds(self):
        with pytest.raises(ValueError, match="t_neg"):
            assign_static([MatchResult(max_iou=0.5, gt_index=0)], 0.3, 0.7)

    def test_rejects_out_of_range_threshold(self):
        with pytest.raises(ValueError):
            assign_static_array(np.array([0.5]), np.array([0]), 1.5, 0.5)


class TestAssignDynamic:
    """Tests for moving-threshold assignment."""

    def test_above_threshold_is_positive(self):
        assert assign_dynamic([MatchResult(max_iou=0.6, gt_index=0)], 0.5) == [Label.POSITIVE]

    def test_below_threshold_is_negative(self):
        assert assign_dynamic([MatchResult(max_iou=0.4, gt_index=0)], 0.5) == [Label.NEGATIVE]

    def test_never_ignores(self, rng):
        labels = assign_dynamic_array(rng.uniform(size=200), np.zeros(200, dtype=np.int64), 0.5)
        assert set(labels.tolist()) <= {int(Label.POSITIVE), int(Label.NEGATIVE)}

    @given(
        st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=30),
        st.floats(min_value=0.0, max_value=1.0),
    )
    def test_dynamic_equals_static_with_equal_thresholds(self, ious, t):
        matches = [MatchResult(max_iou=v, gt_index=0) for v in ious]
        assert assign_dynamic(matches, t) == assign_static(matches, t, t)


class TestSampleBatch:
    """Tests for fixed-size positive/negative sampling."""

    def test_positive_quota(self):
        assert positive_quota(512, 0.25) == 128

    def test_all_positives_kept_under_quota(self, rng):
        labels, gt_index = _labels_and_matches(100, 400)
        proposals, gts = _proposal_arrays(500, rng)
        batch = sample_batch_arrays(labels, gt_index, proposals, gts, 512, 0.25, rng=3)
        assert (batch.num_pos, batch.num_neg) == (100, 400)
        assert not batch.empty_positive

    def test_positives_capped_at_quota(self, rng):
        labels, gt_index = _labels_and_matches(200, 600)
        proposals, gts = _proposal_arrays(800, rng)
        batch = sample_batch_arrays(labels, gt_index, proposals, gts, 512, 0.25, rng=3)
        assert batch.num_pos == 128
        assert batch.num_neg == 384
        assert len(set(batch.indices.tolist())) == 512
        assert set(batch.positive_indices.tolist()) <= set(range(200))

    def test_no_positives_flags_empty(self, rng):
        labels, gt_index = _labels_and_matches(0, 50)
        proposals, gts = _proposal_arrays(50, rng)
        batch = sample_batch_arrays(labels, gt_index, proposals, gts, 512, 0.25, rng=0)
        assert batch.empty_positive
        assert batch.num_pos == 0
        assert batch.num_neg == 50
        assert batch.targets.shape == (0, 4)

    def test_ignored_never_sampled(self, rng):
        labels, gt_index = _labels_and_matches(10, 10, n_ignored=30)
        proposals, gts = _proposal_arrays(50, rng)
        batch = sample_batch_arrays(labels, gt_index, proposals, gts, 512, 0.25, rng=0)
        assert max(batch.indices.tolist()) < 20

    def test_targets_are_normalized_offsets(self, rng):
        labels, gt_index = _labels_and_matches(5, 5)
        proposals, gts = _proposal_arrays(10, rng)
        stats = DeltaStats()
        batch = sample_batch_arrays(labels, gt_index, proposals, gts, 512, 0.25, stats, rng=0)
        expected = normalize_array(encode_array(proposals[:5], gts[[0] * 5]), stats)
        assert batch.targets == pytest.approx(expected)
        assert len(batch.target_deltas()) == 5

    def test_same_seed_same_batch(self, rng):
        labels, gt_index = _labels_and_matches(300, 900)
        proposals, gts = _proposal_arrays(1200, rng)
        first = sample_batch_arrays(labels, gt_index, proposals, gts, 512, 0.25, rng=11)
        second = sample_batch_arrays(labels, gt_index, proposals, gts, 512, 0.25, rng=11)
        assert np.array_equal(first.indices, second.indices)

    def test_rejects_bad_arguments(self, rng):
        labels, gt_index = _labels_and_matches(1, 1)
        proposals, gts = _proposal_arrays(2, rng)
        with pytest.raises(ValueError):
            sample_batch_arrays(labels, gt_index, proposals, gts, 0, 0.25)
        with pytest.raises(ValueError):
            sample_batch_arrays(labels, gt_index, proposals, gts, 512, 1.0)

    def test_list_api(self, sample_gts):
        proposals = list(sample_gts)
        matches = match(proposals, sample_gts)
        labels = assign_dynamic(matches, 0.5)
        batch = sample_batch(labels, matches, proposals, sample_gts, rng_seed=1)
        assert batch.num_pos == 3
        assert batch.targets == pytest.approx(np.zeros((3, 4)))
