"""NMS, average precision and proposal statistics."""

from .average_precision import (
    average_precision,
    coco_map,
    coco_map_multi,
    report_from_arrays,
)
from .nms import nms, nms_arrays
from .proposal_stats import (
    DEFAULT_COUNT_THRESHOLDS,
    PositiveCountStats,
    ThresholdLabelStats,
    label_stats_by_threshold,
    positive_count_stats,
    summarize_labels,
)

__all__ = [
    "DEFAULT_COUNT_THRESHOLDS",
    "PositiveCountStats",
    "ThresholdLabelStats",
    "average_precision",
    "coco_map",
    "coco_map_multi",
    "label_stats_by_threshold",
    "nms",
    "nms_arrays",
    "positive_count_stats",
    "report_from_arrays",
    "summarize_labels",
]
