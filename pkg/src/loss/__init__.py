"""Regression and classification losses."""

from .classification import binary_ce, binary_ce_logits, sigmoid
from .smooth_l1 import (
    LossValue,
    Reduction,
    dsl,
    loss_curves,
    reduce_losses,
    regression_loss,
    smooth_l1,
    smooth_l1_array,
)

__all__ = [
    "LossValue",
    "Reduction",
    "binary_ce",
    "binary_ce_logits",
    "dsl",
    "loss_curves",
    "reduce_losses",
    "regression_loss",
    "sigmoid",
    "smooth_l1",
    "smooth_l1_array",
]
