"""
Fixed-size second-stage batch sampling.
Positives are capped at a fraction of the batch; negatives fill the rest.
"""
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..geometry.coder import encode_array, normalize_array
from ..geometry.iou import boxes_to_array
from ..models.boxes import Box, Delta, DeltaStats
from .matcher import Label, MatchResult, unpack_matches

DEFAULT_BATCH_SIZE = 512
DEFAULT_POS_FRACTION = 0.25


@dataclass(frozen=True)
class SampledBatch:
    """Proposals chosen for one training step.

    Positives come first in ``indices``; ``targets`` and ``gt_indices`` are
    aligned with the positive prefix.
    """

    indices: np.ndarray
    labels: np.ndarray
    targets: np.ndarray
    gt_indices: np.ndarray
    empty_positive: bool

    @property
    def num_pos(self) -> int:
        return len(self.targets)

    @property
    def num_neg(self) -> int:
        return len(self.indices) - self.num_pos

    @property
    def positive_indices(self) -> np.ndarray:
        return self.indices[: self.num_pos]

    def target_deltas(self) -> list[Delta]:
        """Regression targets as Delta records."""
        return [Delta.from_sequence(row) for row in self.targets]


def positive_quota(batch_size: int, pos_fraction: float) -> int:
    """Maximum positives in a batch."""
    return int(pos_fraction * batch_size)


def sample_batch_arrays(
    labels: np.ndarray,
    gt_index: np.ndarray,
    proposals: np.ndarray,
    gts: np.ndarray,
    batch_size: int = DEFAULT_BATCH_SIZE,
    pos_fraction: float = DEFAULT_POS_FRACTION,
    stats: DeltaStats | None = None,
    rng: np.random.Generator | int = 0,
) -> SampledBatch:
    """
    Array form of sample_batch.

    Args:
        labels: (N,) int labels (1, 0, -1)
        gt_index: (N,) matched ground-truth index per proposal
        proposals: (N, 4) proposal corners
        gts: (M, 4) ground-truth corners
        batch_size: Maximum sampled proposals
        pos_fraction: Maximum positive share of the batch
        stats: Normalization for regression targets
        rng: Generator, or integer seed

    Returns:
        SampledBatch; ignored proposals are never sampled

    Raises:
        ValueError: If batch_size < 1 or pos_fraction is outside (0, 1)
    """
    if batch_size < 1:
        raise ValueError(f"batch_size must be >= 1, got {batch_size}")
    if not 0.0 < pos_fraction < 1.0:
        raise ValueError(f"pos_fraction must lie in (0, 1), got {pos_fraction}")
    stats = stats or DeltaStats()
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)

    pos = np.flatnonzero(labels == Label.POSITIVE)
    neg = np.flatnonzero(labels == Label.NEGATIVE)

    n_pos = min(len(pos), positive_quota(batch_size, pos_fraction))
    pos_sel = np.sort(rng.choice(pos, size=n_pos, replace=False)) if n_pos < len(pos) else pos
    n_neg = min(len(neg), batch_size - n_pos)
    neg_sel = np.sort(rng.choice(neg, size=n_neg, replace=False)) if n_neg < len(neg) else neg

    indices = np.concatenate((pos_sel, neg_sel)).astype(np.int64)
    batch_labels = np.concatenate(
        (np.full(len(pos_sel), int(Label.POSITIVE)), np.full(len(neg_sel), int(Label.NEGATIVE)))
    ).astype(np.int64)
    matched = gt_index[pos_sel].astype(np.int64)
    if n_pos:
        targets = normalize_array(encode_array(proposals[pos_sel], gts[matched]), stats)
    else:
        targets = np.zeros((0, 4), dtype=np.float64)

    return SampledBatch(
        indices=indices,
        labels=batch_labels,
        targets=targets,
        gt_indices=matched,
        empty_positive=n_pos == 0,
    )


def sample_batch(
    labels: Sequence[Label],
    matches: Sequence[MatchResult],
    proposals: Sequence[Box],
    gts: Sequence[Box],
    batch_size: int = DEFAULT_BATCH_SIZE,
    pos_fraction: float = DEFAULT_POS_FRACTION,
    stats: DeltaStats | None = None,
    rng_seed: int = 0,
) -> SampledBatch:
    """Sample a training batch from labelled proposals; deterministic given rng_seed."""
    _, gt_index = unpack_matches(matches)
    return sample_batch_arrays(
        np.array([int(label) for label in labels], dtype=np.int64),
        gt_index,
        boxes_to_array(proposals),
        boxes_to_array(gts),
        batch_size=batch_size,
        pos_fraction=pos_fraction,
        stats=stats,
        rng=rng_seed,
    )
