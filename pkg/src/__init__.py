"""Dynamic training machinery simulator package with clean imports."""

# Config
from .config import ExperimentConfig, load_experiment_config

# Core operations
from .assignment import assign_dynamic, assign_static, match, sample_batch
from .controller import DynamicController
from .geometry import decode_offsets, encode_offsets, iou, normalize, denormalize
from .loss import binary_ce, dsl, smooth_l1
from .metrics import average_precision, coco_map, nms, positive_count_stats
from .simulator import gen_proposals, gen_scene, run_closed_loop, run_open_loop

# Models
from .models import Box, Delta, DeltaStats, Detection, EvalReport, TrendLog

__all__ = [
    # Config
    "ExperimentConfig",
    "load_experiment_config",
    # Core operations
    "assign_dynamic",
    "assign_static",
    "average_precision",
    "binary_ce",
    "coco_map",
    "decode_offsets",
    "denormalize",
    "dsl",
    "DynamicController",
    "encode_offsets",
    "gen_proposals",
    "gen_scene",
    "iou",
    "match",
    "nms",
    "normalize",
    "positive_count_stats",
    "run_closed_loop",
    "run_open_loop",
    "sample_batch",
    "smooth_l1",
    # Models
    "Box",
    "Delta",
    "DeltaStats",
    "Detection",
    "EvalReport",
    "TrendLog",
]
