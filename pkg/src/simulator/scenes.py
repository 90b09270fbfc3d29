"""Synthetic scenes: image bounds plus ground-truth boxes."""
from dataclasses import dataclass

import numpy as np

from ..config import SceneConfig
from ..geometry.iou import array_to_boxes
from ..models.boxes import Box


@dataclass(frozen=True)
class Scene:
    """One synthetic image; every ground truth lies inside the bounds."""

    width: float
    height: float
    gt_boxes: np.ndarray
    seed: int

    @property
    def n_objects(self) -> int:
        return len(self.gt_boxes)

    def ground_truths(self) -> list[Box]:
        return array_to_boxes(self.gt_boxes)


def gen_scene(
    seed: int,
    n_objects: int | None = None,
    bounds: tuple[float, float] | None = None,
    config: SceneConfig | None = None,
) -> Scene:
    """
    Draw a scene with n_objects boxes whose sides are uniform in the configured range.

    Args:
        seed: Scene seed
        n_objects: Ground truths to place (defaults to config.n_objects)
        bounds: (width, height) (defaults to the config bounds)
        config: Size range and defaults

    Returns:
        Scene; identical for identical arguments

    Raises:
        ValueError: If n_objects < 1 or the bounds cannot hold the largest box
    """
    config = config or SceneConfig()
    n_objects = config.n_objects if n_objects is None else n_objects
    width, height = bounds if bounds is not None else (config.width, config.height)
    if n_objects < 1:
        raise ValueError(f"n_objects must be >= 1, got {n_objects}")
    if config.max_size > min(width, height):
        raise ValueError(
            f"bounds {width}x{height} are too small for boxes up to {config.max_size}"
        )

    rng = np.random.default_rng(seed)
    w = rng.uniform(config.min_size, config.max_size, size=n_objects)
    h = rng.uniform(config.min_size, config.max_size, size=n_objects)
    x1 = rng.uniform(0.0, 1.0, size=n_objects) * (width - w)
    y1 = rng.uniform(0.0, 1.0, size=n_objects) * (height - h)
    boxes = np.stack((x1, y1, np.minimum(x1 + w, width), np.minimum(y1 + h, height)), axis=-1)
    return Scene(width=float(width), height=float(height), gt_boxes=boxes, seed=seed)
