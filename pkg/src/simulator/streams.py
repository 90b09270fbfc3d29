"""Random stream identifiers.

Each stream of a run is seeded from (run seed, stream, index) so ablation
modes sharing a seed see the same scenes, jitter and evidence noise.
"""
from enum import IntEnum


class Stream(IntEnum):
    SCENE = 1
    PROPOSALS = 2
    SAMPLING = 3
    EVIDENCE = 4
    EVAL_SCENE = 5
    EVAL_PROPOSALS = 6
