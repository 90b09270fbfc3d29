"""Trend log and controller snapshot data models."""
from pydantic import BaseModel, Field

from ..constants.messages import TREND_CSV_HEADER
from ..utils.io import render_csv


class ControllerSnapshot(BaseModel):
    """
    Serializable view of the controller between mutations.
    Written alongside trend logs.
    """

    iteration: int = Field(..., ge=0, description="Completed iterations")
    t_now: float = Field(..., ge=0.0, le=1.0, description="Current IoU threshold")
    beta_now: float = Field(..., gt=0.0, description="Current SmoothL1 beta")
    s_iou_len: int = Field(..., ge=0, description="Recorded IoU statistics since last update")
    s_beta_len: int = Field(..., ge=0, description="Recorded label statistics since last update")


class ThresholdLabelStats(BaseModel):
    """Raw (unnormalized) label spread of the positives at one threshold."""

    threshold: float = Field(..., description="IoU threshold")
    count: int = Field(..., ge=0, description="Proposals with max IoU >= threshold")
    mean_dx: float | None = Field(default=None, description="Mean dx; absent without positives")
    mean_dw: float | None = Field(default=None, description="Mean dw; absent without positives")
    std_dx: float | None = Field(default=None, description="Sample stdev of dx; absent below 2")
    std_dw: float | None = Field(default=None, description="Sample stdev of dw; absent below 2")


class TrendRecord(BaseModel):
    """One update interval of a run."""

    iteration: int = Field(..., ge=0, description="Iteration at the end of the interval")
    t_now: float = Field(..., description="IoU threshold in effect after the interval")
    beta_now: float = Field(..., description="SmoothL1 beta in effect after the interval")
    pos_at_50: float = Field(..., ge=0.0, description="Mean positives per iteration at IoU 0.5")
    pos_at_60: float = Field(..., ge=0.0, description="Mean positives per iteration at IoU 0.6")
    pos_at_70: float = Field(..., ge=0.0, description="Mean positives per iteration at IoU 0.7")
    std_dx: float | None = Field(default=None, description="Stdev of dx over positives at 0.5")
    std_dw: float | None = Field(default=None, description="Stdev of dw over positives at 0.5")
    label_stats: list[ThresholdLabelStats] = Field(
        default_factory=list, description="Pooled label spread per count threshold"
    )

    def as_row(self) -> list:
        return [
            self.iteration,
            self.t_now,
            self.beta_now,
            self.pos_at_50,
            self.pos_at_60,
            self.pos_at_70,
            self.std_dx,
            self.std_dw,
        ]


class TrendLog(BaseModel):
    """Per-interval records of a run, in iteration order."""

    seed: int = Field(..., description="Run seed")
    records: list[TrendRecord] = Field(default_factory=list)

    def column(self, name: str) -> list:
        """Values of one column across records."""
        return [getattr(record, name) for record in self.records]

    def to_csv(self) -> str:
        """CSV text with the fixed trend header."""
        return render_csv(TREND_CSV_HEADER, (record.as_row() for record in self.records))

    def label_stats_payload(self) -> dict:
        """Per-interval label spread by threshold, ready for write_json."""
        return {
            "seed": self.seed,
            "intervals": [
                {
                    "iteration": record.iteration,
                    "t_now": record.t_now,
                    "thresholds": [s.model_dump(mode="json") for s in record.label_stats],
                }
                for record in self.records
            ],
        }
