"""Synthetic scenes, scripted proposals and the closed-loop toy detector."""

from .closed_loop import (
    ClosedLoopResult,
    ClosedLoopTrainer,
    DynamicBetaPolicy,
    DynamicLabelPolicy,
    FixedBetaPolicy,
    StaticLabelPolicy,
    run_closed_loop,
)
from .detector import StepLosses, ToyDetector, TrainingDivergedError
from .evidence import Evidence, observe
from .open_loop import run_open_loop
from .proposals import clip_boxes, gen_proposals, gen_proposals_array, jitter_boxes
from .recorder import TrendRecorder
from .scenes import Scene, gen_scene
from .streams import Stream

__all__ = [
    "ClosedLoopResult",
    "ClosedLoopTrainer",
    "DynamicBetaPolicy",
    "DynamicLabelPolicy",
    "Evidence",
    "FixedBetaPolicy",
    "Scene",
    "StaticLabelPolicy",
    "StepLosses",
    "Stream",
    "ToyDetector",
    "TrainingDivergedError",
    "TrendRecorder",
    "clip_boxes",
    "gen_proposals",
    "gen_proposals_array",
    "gen_scene",
    "jitter_boxes",
    "observe",
    "run_closed_loop",
    "run_open_loop",
]
