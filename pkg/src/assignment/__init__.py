"""Proposal matching, label assignment and batch sampling."""

from .matcher import (
    NO_MATCH,
    Label,
    MatchResult,
    assign_dynamic,
    assign_dynamic_array,
    assign_static,
    assign_static_array,
    match,
    match_arrays,
)
from .sampler import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_POS_FRACTION,
    SampledBatch,
    positive_quota,
    sample_batch,
    sample_batch_arrays,
)

__all__ = [
    "NO_MATCH",
    "Label",
    "MatchResult",
    "assign_dynamic",
    "assign_dynamic_array",
    "assign_static",
    "assign_static_array",
    "match",
    "match_arrays",
    "DEFAULT_BATCH_SIZE",
    "DEFAULT_POS_FRACTION",
    "SampledBatch",
    "positive_quota",
    "sample_batch",
    "sample_batch_arrays",
]
