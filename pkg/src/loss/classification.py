"""Binary cross-entropy for the object-vs-background classifier."""
import math

import numpy as np


def binary_ce(score: float, label: int) -> tuple[float, float]:
    """
    Negative log likelihood of a probability score.

    Args:
        score: Predicted probability, strictly inside (0, 1)
        label: 0 or 1

    Returns:
        (value, gradient with respect to the logit) where the gradient is score - label

    Raises:
        ValueError: If score is not strictly inside (0, 1) or label is not 0/1
    """
    if not 0.0 < score < 1.0:
        raise ValueError(f"score must lie strictly inside (0, 1), got {score}")
    if label not in (0, 1):
        raise ValueError(f"label must be 0 or 1, got {label}")
    value = -math.log(score) if label == 1 else -math.log1p(-score)
    return value, score - label


def sigmoid(logits: np.ndarray) -> np.ndarray:
    """Numerically stable logistic function."""
    return np.exp(-np.logaddexp(0.0, -logits))


def binary_ce_logits(logits: np.ndarray, labels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Elementwise BCE computed from logits.

    Returns:
        (values, gradients with respect to the logits)
    """
    values = np.logaddexp(0.0, logits) - labels * logits
    return values, sigmoid(logits) - labels
