"""Detection and evaluation report data models."""
import math

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .boxes import Box

# 0.50, 0.55, ..., 0.95
COCO_IOU_THRESHOLDS: tuple[float, ...] = tuple(round(0.5 + 0.05 * i, 2) for i in range(10))


def threshold_key(threshold: float) -> str:
    """Report key for an IoU threshold ("0.50")."""
    return f"{threshold:.2f}"


class Detection(BaseModel):
    """
    Scored box produced by the detector.
    Ranked by score for NMS and AP.
    """

    model_config = ConfigDict(frozen=True)

    box: Box = Field(..., description="Detected box")
    score: float = Field(..., ge=0.0, le=1.0, description="Confidence in [0, 1]")

    @field_validator("score")
    @classmethod
    def _finite_score(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("score must be finite")
        return value


class DetectionRecord(BaseModel):
    """One entry of a detections JSON file: {"box": [x1, y1, x2, y2], "score": s}."""

    model_config = ConfigDict(extra="forbid")

    box: list[float] = Field(..., min_length=4, max_length=4)
    score: float = Field(..., ge=0.0, le=1.0)

    def to_detection(self) -> Detection:
        return Detection(box=Box.from_list(self.box), score=self.score)


class GroundTruthRecord(BaseModel):
    """One entry of a ground-truth JSON file: {"box": [x1, y1, x2, y2]}."""

    model_config = ConfigDict(extra="forbid")

    box: list[float] = Field(..., min_length=4, max_length=4)

    def to_box(self) -> Box:
        return Box.from_list(self.box)


class EvalReport(BaseModel):
    """
    COCO-style evaluation summary.
    AP per IoU threshold 0.50..0.95 (step 0.05) and their unweighted mean.
    """

    ap: dict[str, float] = Field(..., description="AP keyed by threshold ('0.50' .. '0.95')")
    mean_ap: float = Field(..., ge=0.0, le=1.0, description="Mean of the ten APs")

    model_config = {
        "json_schema_extra": {
            "example": {
                "ap": {threshold_key(t): 0.5 for t in COCO_IOU_THRESHOLDS},
                "mean_ap": 0.5,
            }
        }
    }

    def at(self, threshold: float) -> float:
        """AP at one of the ten thresholds."""
        return self.ap[threshold_key(threshold)]

    @property
    def ap50(self) -> float:
        return self.at(0.50)

    @property
    def ap60(self) -> float:
        return self.at(0.60)

    @property
    def ap70(self) -> float:
        return self.at(0.70)

    @property
    def ap75(self) -> float:
        return self.at(0.75)

    @property
    def ap80(self) -> float:
        return self.at(0.80)

    @property
    def ap90(self) -> float:
        return self.at(0.90)
