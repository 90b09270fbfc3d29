"""
Proposal generator with a controllable quality.

Jittered proposals shift each ground-truth center by Gaussian noise of
q * size and its log-size by Gaussian noise of q. Background proposals are
uniform boxes. Everything is clipped to the scene, then boxes thinner than
the configured minimum side are dropped.
"""
import numpy as np

from ..config import SceneConfig
from ..geometry.iou import array_to_boxes
from ..models.boxes import Box
from .scenes import Scene


def clip_boxes(
    boxes: np.ndarray, width: float, height: float, min_side: float
) -> tuple[np.ndarray, np.ndarray]:
    """
    Clip corners to [0, width] x [0, height] and drop thin boxes.

    Returns:
        (kept boxes, boolean keep mask over the input rows)
    """
    clipped = np.empty_like(boxes)
    clipped[:, 0] = np.clip(boxes[:, 0], 0.0, width)
    clipped[:, 1] = np.clip(boxes[:, 1], 0.0, height)
    clipped[:, 2] = np.clip(boxes[:, 2], 0.0, width)
    clipped[:, 3] = np.clip(boxes[:, 3], 0.0, height)
    keep = (
        np.isfinite(clipped).all(axis=1)
        & (clipped[:, 2] - clipped[:, 0] >= min_side)
        & (clipped[:, 3] - clipped[:, 1] >= min_side)
    )
    return clipped[keep], keep


def jitter_boxes(
    gt_boxes: np.ndarray, q: float, n_per_gt: int, rng: np.random.Generator
) -> np.ndarray:
    """
    n_per_gt noisy copies of every ground truth, unclipped.

    Rows are grouped by ground truth in input order.
    """
    if not q > 0:
        raise ValueError(f"noise scale q must be positive, got {q}")
    if n_per_gt < 0:
        raise ValueError(f"n_per_gt must be >= 0, got {n_per_gt}")
    gt = np.repeat(gt_boxes, n_per_gt, axis=0)
    gw = gt[:, 2] - gt[:, 0]
    gh = gt[:, 3] - gt[:, 1]
    noise = rng.standard_normal((len(gt), 4))
    cx = gt[:, 0] + 0.5 * gw + q * gw * noise[:, 0]
    cy = gt[:, 1] + 0.5 * gh + q * gh * noise[:, 1]
    w = gw * np.exp(q * noise[:, 2])
    h = gh * np.exp(q * noise[:, 3])
    return np.stack((cx - 0.5 * w, cy - 0.5 * h, cx + 0.5 * w, cy + 0.5 * h), axis=-1)


def background_boxes(
    n: int, width: float, height: float, config: SceneConfig, rng: np.random.Generator
) -> np.ndarray:
    """n boxes with sides uniform in the ground-truth size range, anywhere in the scene."""
    w = rng.uniform(config.min_size, config.max_size, size=n)
    h = rng.uniform(config.min_size, config.max_size, size=n)
    x1 = rng.uniform(0.0, 1.0, size=n) * np.maximum(width - w, 0.0)
    y1 = rng.uniform(0.0, 1.0, size=n) * np.maximum(height - h, 0.0)
    return np.stack((x1, y1, x1 + w, y1 + h), axis=-1)


def gen_proposals_array(
    scene: Scene,
    q: float,
    n_per_gt: int,
    rng: np.random.Generator | int,
    config: SceneConfig | None = None,
    n_background: int | None = None,
) -> np.ndarray:
    """
    Array form of gen_proposals.

    Returns:
        (M, 4) proposals: jittered rows grouped by ground truth, then background
    """
    config = config or SceneConfig()
    n_background = config.n_background if n_background is None else n_background
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    jittered = jitter_boxes(scene.gt_boxes, q, n_per_gt, rng)
    background = background_boxes(n_background, scene.width, scene.height, config, rng)
    proposals, _ = clip_boxes(
        np.concatenate((jittered, background)), scene.width, scene.height, config.min_side
    )
    return proposals


def gen_proposals(
    scene: Scene,
    q: float,
    n_per_gt: int,
    seed: int,
    config: SceneConfig | None = None,
    n_background: int | None = None,
) -> list[Box]:
    """
    Proposals around a scene's ground truths at noise scale q.

    Args:
        scene: Scene to propose for
        q: Noise scale, > 0; smaller gives better proposals
        n_per_gt: Jittered copies per ground truth, >= 1
        seed: Generator seed; identical seeds give identical proposals
        config: Background count, size range and minimum side
        n_background: Overrides config.n_background

    Returns:
        Valid boxes inside the scene bounds
    """
    if n_per_gt < 1:
        raise ValueError(f"n_per_gt must be >= 1, got {n_per_gt}")
    return array_to_boxes(gen_proposals_array(scene, q, n_per_gt, seed, config, n_background))
