"""Box and regression-offset data models."""
import math

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Box(BaseModel):
    """
    Axis-aligned rectangle in continuous image coordinates.
    Stored as corners; center/size are derived views.
    """

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"x1": 10.0, "y1": 12.0, "x2": 42.0, "y2": 30.0}},
    )

    x1: float = Field(..., description="Left edge")
    y1: float = Field(..., description="Top edge")
    x2: float = Field(..., description="Right edge, strictly greater than x1")
    y2: float = Field(..., description="Bottom edge, strictly greater than y1")

    @model_validator(mode="after")
    def _check_extent(self) -> "Box":
        coords = (self.x1, self.y1, self.x2, self.y2)
        if not all(math.isfinite(c) for c in coords):
            raise ValueError(f"box coordinates must be finite, got {coords}")
        if not (self.x2 > self.x1 and self.y2 > self.y1):
            raise ValueError(f"degenerate box {coords}: width and height must be positive")
        return self

    @classmethod
    def from_center(cls, cx: float, cy: float, w: float, h: float) -> "Box":
        """Build a box from center and size."""
        return cls(x1=cx - 0.5 * w, y1=cy - 0.5 * h, x2=cx + 0.5 * w, y2=cy + 0.5 * h)

    @classmethod
    def from_list(cls, coords: list[float] | tuple[float, ...]) -> "Box":
        """Build a box from its JSON form [x1, y1, x2, y2]."""
        if len(coords) != 4:
            raise ValueError(f"a box needs 4 coordinates, got {len(coords)}")
        x1, y1, x2, y2 = (float(c) for c in coords)
        return cls(x1=x1, y1=y1, x2=x2, y2=y2)

    def to_list(self) -> list[float]:
        """JSON form [x1, y1, x2, y2]."""
        return [self.x1, self.y1, self.x2, self.y2]

    @property
    def w(self) -> float:
        return self.x2 - self.x1

    @property
    def h(self) -> float:
        return self.y2 - self.y1

    @property
    def cx(self) -> float:
        return self.x1 + 0.5 * self.w

    @property
    def cy(self) -> float:
        return self.y1 + 0.5 * self.h

    @property
    def area(self) -> float:
        return self.w * self.h


class Delta(BaseModel):
    """Regression offset (dx, dy, dw, dh) from a proposal to a target box."""

    model_config = ConfigDict(frozen=True)

    dx: float = Field(default=0.0, description="Center x offset in units of proposal width")
    dy: float = Field(default=0.0, description="Center y offset in units of proposal height")
    dw: float = Field(default=0.0, description="Log width ratio")
    dh: float = Field(default=0.0, description="Log height ratio")

    @model_validator(mode="after")
    def _check_finite(self) -> "Delta":
        if not all(math.isfinite(v) for v in self.as_tuple()):
            raise ValueError(f"offset components must be finite, got {self.as_tuple()}")
        return self

    @classmethod
    def from_sequence(cls, values) -> "Delta":
        dx, dy, dw, dh = (float(v) for v in values)
        return cls(dx=dx, dy=dy, dw=dw, dh=dh)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.dx, self.dy, self.dw, self.dh)


class DeltaStats(BaseModel):
    """Normalization factors applied to regression offsets."""

    model_config = ConfigDict(frozen=True)

    mean: Delta = Field(default_factory=Delta, description="Per-component mean")
    stdev: Delta = Field(
        default_factory=lambda: Delta(dx=0.1, dy=0.1, dw=0.2, dh=0.2),
        description="Per-component standard deviation, strictly positive",
    )

    @model_validator(mode="after")
    def _check_stdev(self) -> "DeltaStats":
        if not all(s > 0 for s in self.stdev.as_tuple()):
            raise ValueError(f"stdev components must be positive, got {self.stdev.as_tuple()}")
        return self
