"""Data models shared across modules."""

from .boxes import Box, Delta, DeltaStats
from .detection import (
    COCO_IOU_THRESHOLDS,
    Detection,
    DetectionRecord,
    EvalReport,
    GroundTruthRecord,
    threshold_key,
)
from .trend import ControllerSnapshot, ThresholdLabelStats, TrendLog, TrendRecord

__all__ = [
    "Box",
    "Delta",
    "DeltaStats",
    "COCO_IOU_THRESHOLDS",
    "Detection",
    "DetectionRecord",
    "EvalReport",
    "GroundTruthRecord",
    "threshold_key",
    "ControllerSnapshot",
    "ThresholdLabelStats",
    "TrendLog",
    "TrendRecord",
]
