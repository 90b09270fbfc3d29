"""Bounding box offset encoding, decoding and normalization.

Offsets use the center/size parameterization relative to a reference box b:

``dx = (g_cx - b_cx) / b_w``  ``dy = (g_cy - b_cy) / b_h``

``dw = log(g_w / b_w)``  ``dh = log(g_h / b_h)``

Scalar functions work on :class:`Box` / :class:`Delta`; the ``*_array``
variants work on ``(N, 4)`` arrays and are what the simulator uses.
"""

import math
import sys

import numpy as np

from ..models.boxes import Box, Delta, DeltaStats

# Largest log-ratio whose exponential is representable.
MAX_LOG_RATIO = math.log(sys.float_info.max)
# Clip applied when decoding predictions, as in common detection box coders.
DEFAULT_DECODE_CLIP = math.log(1000.0 / 16)


def encode_offsets(b: Box, g: Box) -> Delta:
    """
    Encode the offset from reference box b to target box g.

    Args:
        b: Reference (proposal) box
        g: Target (ground-truth) box

    Returns:
        Delta (dx, dy, dw, dh)
    """
    return Delta(
        dx=(g.cx - b.cx) / b.w,
        dy=(g.cy - b.cy) / b.h,
        dw=math.log(g.w / b.w),
        dh=math.log(g.h / b.h),
    )


def decode_offsets(b: Box, d: Delta) -> Box:
    """
    Apply offset d to reference box b; exact inverse of encode_offsets.

    Raises:
        ValueError: If dw or dh would overflow the exponential
    """
    if abs(d.dw) > MAX_LOG_RATIO or abs(d.dh) > MAX_LOG_RATIO:
        raise ValueError(f"log size offsets ({d.dw}, {d.dh}) overflow the exponential")
    w = b.w * math.exp(d.dw)
    h = b.h * math.exp(d.dh)
    return Box.from_center(b.cx + d.dx * b.w, b.cy + d.dy * b.h, w, h)


def _centers(array: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    w = array[:, 2] - array[:, 0]
    h = array[:, 3] - array[:, 1]
    return array[:, 0] + 0.5 * w, array[:, 1] + 0.5 * h, w, h


def encode_array(boxes: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Row-wise encode_offsets for (N, 4) reference boxes and (N, 4) targets."""
    if boxes.shape != targets.shape:
        raise ValueError(
            f"boxes and targets must share a shape, got {boxes.shape} and {targets.shape}"
        )
    bx, by, bw, bh = _centers(boxes)
    gx, gy, gw, gh = _centers(targets)
    return np.stack(
        ((gx - bx) / bw, (gy - by) / bh, np.log(gw / bw), np.log(gh / bh)), axis=-1
    )


def decode_array(
    boxes: np.ndarray, deltas: np.ndarray, clip: float = DEFAULT_DECODE_CLIP
) -> np.ndarray:
    """
    Row-wise decode of predicted offsets.

    Args:
        boxes: (N, 4) reference boxes
        deltas: (N, 4) raw (denormalized) offsets
        clip: Bound on |dw|, |dh| before exponentiation

    Returns:
        (N, 4) decoded corners
    """
    bx, by, bw, bh = _centers(boxes)
    dw = np.clip(deltas[:, 2], -clip, clip)
    dh = np.clip(deltas[:, 3], -clip, clip)
    cx = bx + deltas[:, 0] * bw
    cy = by + deltas[:, 1] * bh
    w = bw * np.exp(dw)
    h = bh * np.exp(dh)
    return np.stack((cx - 0.5 * w, cy - 0.5 * h, cx + 0.5 * w, cy + 0.5 * h), axis=-1)


def stats_arrays(stats: DeltaStats) -> tuple[np.ndarray, np.ndarray]:
    """(mean, stdev) as length-4 arrays."""
    return np.array(stats.mean.as_tuple()), np.array(stats.stdev.as_tuple())


def normalize(d: Delta, s: DeltaStats) -> Delta:
    """Componentwise (d - mean) / stdev."""
    return Delta.from_sequence(
        (v - m) / sd for v, m, sd in zip(d.as_tuple(), s.mean.as_tuple(), s.stdev.as_tuple())
    )


def denormalize(d: Delta, s: DeltaStats) -> Delta:
    """Componentwise d * stdev + mean; inverse of normalize."""
    return Delta.from_sequence(
        v * sd + m for v, m, sd in zip(d.as_tuple(), s.mean.as_tuple(), s.stdev.as_tuple())
    )


def normalize_array(deltas: np.ndarray, s: DeltaStats) -> np.ndarray:
    mean, std = stats_arrays(s)
    return (deltas - mean) / std


def denormalize_array(deltas: np.ndarray, s: DeltaStats) -> np.ndarray:
    mean, std = stats_arrays(s)
    return deltas * std + mean
