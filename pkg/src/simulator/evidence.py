"""
What the toy detector observes about each proposal.

The detector never sees pixels. Per proposal it gets a noisy copy of the
normalized offset to the matched ground truth and a noisy copy of the max IoU.
Offset noise grows with the offset magnitude, and a fraction of observations
are outliers with inflated noise.
"""
from dataclasses import dataclass

import numpy as np

from ..config import EvidenceConfig
from ..geometry.coder import encode_array, normalize_array
from ..models.boxes import DeltaStats


@dataclass(frozen=True)
class Evidence:
    """Observations aligned with a proposal array."""

    offsets: np.ndarray
    iou: np.ndarray

    def __len__(self) -> int:
        return len(self.iou)

    def take(self, indices: np.ndarray) -> "Evidence":
        return Evidence(offsets=self.offsets[indices], iou=self.iou[indices])

    def regression_features(self) -> np.ndarray:
        """[1, observed offsets], shape (N, 5)."""
        return np.hstack((np.ones((len(self), 1)), self.offsets))

    def classification_features(self) -> np.ndarray:
        """[1, observed IoU, mean |observed offset|], shape (N, 3)."""
        return np.column_stack(
            (np.ones(len(self)), self.iou, np.abs(self.offsets).mean(axis=1))
        )


def observe(
    proposals: np.ndarray,
    gts: np.ndarray,
    max_iou: np.ndarray,
    gt_index: np.ndarray,
    stats: DeltaStats,
    config: EvidenceConfig,
    rng: np.random.Generator,
) -> Evidence:
    """
    Draw observations for matched proposals.

    Args:
        proposals: (N, 4) proposals
        gts: (M, 4) ground truths, M >= 1
        max_iou: (N,) max IoU per proposal
        gt_index: (N,) matched ground truth per proposal
        stats: Offset normalization
        config: Noise model
        rng: Evidence stream

    Returns:
        Evidence with offsets clipped to +-config.feature_clip and IoU in [0, 1]
    """
    n = len(proposals)
    if n == 0:
        return Evidence(offsets=np.zeros((0, 4)), iou=np.zeros(0))
    true_offsets = normalize_array(encode_array(proposals, gts[gt_index]), stats)
    scale = config.noise_floor + config.noise_gain * np.abs(true_offsets)
    noise = rng.standard_normal((n, 4)) * scale
    outliers = rng.random(n) < config.outlier_rate
    noise[outliers] *= config.outlier_scale
    offsets = np.clip(true_offsets + noise, -config.feature_clip, config.feature_clip)
    iou = np.clip(max_iou + config.iou_noise * rng.standard_normal(n), 0.0, 1.0)
    return Evidence(offsets=offsets, iou=iou)
