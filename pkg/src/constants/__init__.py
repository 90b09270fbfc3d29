"""Constants package - enumerations, output headers and message templates."""

from .enums import Ablation, AblationParam, ExperimentMode, LabelReduction, ScheduleKind
from .messages import (
    CURVES_CSV_HEADER,
    RUNS_CSV_HEADER,
    SUMMARY_CSV_HEADER,
    TREND_CSV_HEADER,
    run_status,
)

__all__ = [
    "Ablation",
    "AblationParam",
    "ExperimentMode",
    "LabelReduction",
    "ScheduleKind",
    "CURVES_CSV_HEADER",
    "RUNS_CSV_HEADER",
    "SUMMARY_CSV_HEADER",
    "TREND_CSV_HEADER",
    "run_status",
]
