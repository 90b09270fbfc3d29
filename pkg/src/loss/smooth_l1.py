"""SmoothL1 and dynamic SmoothL1 losses with analytic gradients.

``SmoothL1(x, beta) = 0.5 x^2 / beta`` if ``|x| < beta`` else ``|x| - 0.5 beta``.
The gradient is ``x / beta`` on the quadratic branch and ``sign(x)`` on the
linear branch; both pieces meet at ``|x| = beta``. Smaller beta saturates the
gradient sooner, so small errors weigh more.
"""
import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from ..models.boxes import Delta


@dataclass(frozen=True)
class LossValue:
    """Loss value and its derivative with respect to the input."""

    value: float
    gradient: float


class Reduction(StrEnum):
    """How per-sample losses combine into a batch loss."""

    MEAN = "mean"
    SUM = "sum"


def _check_beta(beta: float) -> None:
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")


def smooth_l1(x: float, beta: float) -> LossValue:
    """
    SmoothL1 loss of a scalar residual.

    Args:
        x: Residual (prediction minus target)
        beta: Kink location, > 0

    Returns:
        LossValue with value and d value / d x

    Raises:
        ValueError: If beta <= 0
    """
    _check_beta(beta)
    ax = abs(x)
    if ax < beta:
        return LossValue(value=0.5 * ax * ax / beta, gradient=x / beta)
    return LossValue(value=ax - 0.5 * beta, gradient=math.copysign(1.0, x))


def dsl(x: float, beta_now: float) -> LossValue:
    """Dynamic SmoothL1: SmoothL1 evaluated at the controller's current beta."""
    return smooth_l1(x, beta_now)


def smooth_l1_array(x: np.ndarray, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Elementwise SmoothL1 values and gradients."""
    _check_beta(beta)
    ax = np.abs(x)
    quadratic = ax < beta
    values = np.where(quadratic, 0.5 * ax * ax / beta, ax - 0.5 * beta)
    grads = np.where(quadratic, x / beta, np.sign(x))
    return values, grads


def regression_loss(pred: Delta, target: Delta, beta: float) -> tuple[float, Delta]:
    """
    Sum of SmoothL1 over the four offset coordinates.

    Returns:
        (value, per-coordinate gradient with respect to pred)
    """
    parts = [smooth_l1(p - t, beta) for p, t in zip(pred.as_tuple(), target.as_tuple())]
    return sum(part.value for part in parts), Delta.from_sequence(part.gradient for part in parts)


def reduce_losses(values: np.ndarray | Sequence[float], reduction: Reduction) -> float:
    """Combine per-sample losses; an empty mean is 0."""
    values = np.asarray(values, dtype=np.float64)
    if reduction is Reduction.SUM:
        return float(values.sum())
    return float(values.mean()) if values.size else 0.0


def loss_curves(
    betas: Sequence[float], xs: Sequence[float]
) -> list[tuple[float, float, float, float]]:
    """
    Sample SmoothL1 loss and gradient curves.

    Returns:
        Rows (beta, x, loss, gradient) for every beta, x pair
    """
    rows = []
    for beta in betas:
        for x in xs:
            point = smooth_l1(x, beta)
            rows.append((float(beta), float(x), point.value, point.gradient))
    return rows
