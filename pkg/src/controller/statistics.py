"""Order statistics and label scalars recorded by the controller."""
from collections.abc import Sequence

import numpy as np

from ..constants.enums import LabelReduction


def _as_array(values: Sequence[float] | np.ndarray, k: int) -> np.ndarray:
    array = np.asarray(values, dtype=np.float64).ravel()
    if array.size == 0:
        raise ValueError("order statistic of an empty sequence")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return array


def kth_largest(values: Sequence[float] | np.ndarray, k: int) -> float:
    """
    k-th largest value counting duplicates.

    Falls back to the minimum when k exceeds the number of values.

    Raises:
        ValueError: If values is empty or k < 1
    """
    array = _as_array(values, k)
    if k >= array.size:
        return float(array.min())
    return float(np.partition(array, array.size - k)[array.size - k])


def kth_smallest(values: Sequence[float] | np.ndarray, k: int) -> float:
    """
    k-th smallest value counting duplicates.

    Falls back to the maximum when k exceeds the number of values.

    Raises:
        ValueError: If values is empty or k < 1
    """
    array = _as_array(values, k)
    if k >= array.size:
        return float(array.max())
    return float(np.partition(array, k - 1)[k - 1])


def label_scalars(targets: np.ndarray, reduction: LabelReduction) -> np.ndarray:
    """
    Reduce (P, 4) normalized regression labels to scalars.

    Returns:
        (P,) for per-positive reductions, (4P,) for FLATTEN
    """
    magnitudes = np.abs(np.asarray(targets, dtype=np.float64).reshape(-1, 4))
    if reduction is LabelReduction.MAX_ABS:
        return magnitudes.max(axis=1) if len(magnitudes) else np.zeros(0)
    if reduction is LabelReduction.FLATTEN:
        return magnitudes.ravel()
    if reduction is LabelReduction.MEAN_ABS_CENTER:
        return magnitudes[:, :2].mean(axis=1) if len(magnitudes) else np.zeros(0)
    return magnitudes.mean(axis=1) if len(magnitudes) else np.zeros(0)
