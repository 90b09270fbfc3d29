"""Batch experiment commands."""

from .commands import (
    DEFAULT_CURVE_BETAS,
    DEFAULT_CURVE_XS,
    cmd_ablate,
    cmd_curves,
    cmd_eval,
    cmd_simulate,
    cmd_train,
    grid_point_label,
)

__all__ = [
    "DEFAULT_CURVE_BETAS",
    "DEFAULT_CURVE_XS",
    "cmd_ablate",
    "cmd_curves",
    "cmd_eval",
    "cmd_simulate",
    "cmd_train",
    "grid_point_label",
]
