"""Per-interval trend statistics shared by the open and closed loops."""
import numpy as np

from ..geometry.coder import encode_array
from ..metrics.proposal_stats import DEFAULT_COUNT_THRESHOLDS, summarize_labels
from ..models.trend import TrendRecord

COUNT_THRESHOLDS = DEFAULT_COUNT_THRESHOLDS


def _pooled(chunks: list[np.ndarray]) -> np.ndarray:
    return np.concatenate(chunks) if chunks else np.zeros(0)


class TrendRecorder:
    """
    Accumulates one update interval of proposal statistics.

    Counts are averaged per iteration; dx and dw stdevs pool the raw offsets
    of every positive at the lowest count threshold across the interval.
    The per-threshold label stats pool the same positives, so their counts
    are interval totals.
    """

    def __init__(self) -> None:
        self._reset()

    def _reset(self) -> None:
        self._iterations = 0
        self._counts = np.zeros(len(COUNT_THRESHOLDS))
        self._iou: list[np.ndarray] = []
        self._dx: list[np.ndarray] = []
        self._dw: list[np.ndarray] = []

    def observe(
        self, proposals: np.ndarray, gts: np.ndarray, max_iou: np.ndarray, gt_index: np.ndarray
    ) -> None:
        self._iterations += 1
        self._counts += [np.count_nonzero(max_iou >= t) for t in COUNT_THRESHOLDS]
        positive = max_iou >= COUNT_THRESHOLDS[0]
        if positive.any():
            offsets = encode_array(proposals[positive], gts[gt_index[positive]])
            self._iou.append(max_iou[positive])
            self._dx.append(offsets[:, 0])
            self._dw.append(offsets[:, 2])

    def flush(self, iteration: int, t_now: float, beta_now: float) -> TrendRecord:
        """Close the interval and start a new one."""
        means = self._counts / max(self._iterations, 1)
        iou, dx, dw = _pooled(self._iou), _pooled(self._dx), _pooled(self._dw)
        label_stats = [summarize_labels(iou, dx, dw, t) for t in COUNT_THRESHOLDS]
        record = TrendRecord(
            iteration=iteration,
            t_now=t_now,
            beta_now=beta_now,
            pos_at_50=float(means[0]),
            pos_at_60=float(means[1]),
            pos_at_70=float(means[2]),
            std_dx=label_stats[0].std_dx,
            std_dw=label_stats[0].std_dw,
            label_stats=label_stats,
        )
        self._reset()
        return record
