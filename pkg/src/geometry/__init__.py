"""Box geometry: IoU and offset coding."""

from .coder import (
    DEFAULT_DECODE_CLIP,
    MAX_LOG_RATIO,
    decode_array,
    decode_offsets,
    denormalize,
    denormalize_array,
    encode_array,
    encode_offsets,
    normalize,
    normalize_array,
)
from .iou import array_to_boxes, boxes_to_array, iou, pairwise_iou

__all__ = [
    "DEFAULT_DECODE_CLIP",
    "MAX_LOG_RATIO",
    "array_to_boxes",
    "boxes_to_array",
    "decode_array",
    "decode_offsets",
    "denormalize",
    "denormalize_array",
    "encode_array",
    "encode_offsets",
    "iou",
    "normalize",
    "normalize_array",
    "pairwise_iou",
]
