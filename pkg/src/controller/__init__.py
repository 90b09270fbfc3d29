"""Dynamic threshold and beta controller."""

from .dynamic import ControllerState, DynamicController
from .statistics import kth_largest, kth_smallest, label_scalars

__all__ = [
    "ControllerState",
    "DynamicController",
    "kth_largest",
    "kth_smallest",
    "label_scalars",
]
