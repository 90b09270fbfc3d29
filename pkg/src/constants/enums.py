"""Enumerations shared by configuration and the modules it configures."""
from enum import StrEnum


class LabelReduction(StrEnum):
    """Per-positive scalar summarising a normalized regression label."""

    MEAN_ABS = "mean_abs"
    MAX_ABS = "max_abs"
    FLATTEN = "flatten"
    MEAN_ABS_CENTER = "mean_abs_center"


class ScheduleKind(StrEnum):
    """Proposal noise schedule shape."""

    EXPONENTIAL = "exponential"
    CONSTANT = "constant"


class ExperimentMode(StrEnum):
    OPEN_LOOP = "open-loop"
    CLOSED_LOOP = "closed-loop"


class Ablation(StrEnum):
    """Which dynamic components are enabled in closed-loop training."""

    BASELINE = "baseline"
    DLA = "dla"
    DSL = "dsl"
    DLA_DSL = "dla+dsl"

    @property
    def dynamic_labels(self) -> bool:
        return self in (Ablation.DLA, Ablation.DLA_DSL)

    @property
    def dynamic_beta(self) -> bool:
        return self in (Ablation.DSL, Ablation.DLA_DSL)


class AblationParam(StrEnum):
    """Parameters a grid ablation may sweep."""

    K_IOU = "k_iou"
    K_BETA = "k_beta"
    UPDATE_INTERVAL = "update_interval"
    FIXED_BETA = "fixed_beta"
