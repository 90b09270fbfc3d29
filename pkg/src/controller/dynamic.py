"""
Dynamic IoU threshold and SmoothL1 beta controller.

Every iteration records the K_I-th largest matched IoU and the K_beta-th
smallest regression-label scalar. Every C iterations T_now becomes the mean
of the recorded IoUs (floored) and beta_now the median of the recorded label
scalars (capped); both recordings are then cleared.
"""
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from ..config import ControllerConfig
from ..models.trend import ControllerSnapshot
from ..utils.logging import get_logger
from .statistics import kth_largest, kth_smallest

logger = get_logger(__name__)

# beta_now must stay positive for SmoothL1.
MIN_BETA = 1e-6


@dataclass
class ControllerState:
    """Mutable controller state; owned by one DynamicController."""

    t_now: float
    beta_now: float
    s_iou: list[float] = field(default_factory=list)
    s_beta: list[float] = field(default_factory=list)
    iteration: int = 0
    skipped_updates: int = 0


class DynamicController:
    """
    Single-writer state machine driving T_now and beta_now.
    record and maybe_update must be called in order, once per iteration.
    """

    def __init__(self, config: ControllerConfig | None = None):
        self.config = config or ControllerConfig()
        self.state = ControllerState(t_now=self.config.t_init, beta_now=self.config.beta_init)

    def record(
        self,
        matched_ious: Sequence[float] | np.ndarray,
        reg_label_scalars: Sequence[float] | np.ndarray,
    ) -> ControllerState:
        """Record this iteration's order statistics; empty inputs record nothing."""
        if len(matched_ious):
            self.state.s_iou.append(kth_largest(matched_ious, self.config.k_iou))
        if len(reg_label_scalars):
            self.state.s_beta.append(kth_smallest(reg_label_scalars, self.config.k_beta))
        return self.state

    def maybe_update(self) -> ControllerState:
        """Advance one iteration; on every C-th iteration refresh T_now and beta_now."""
        state = self.state
        state.iteration += 1
        if state.iteration % self.config.update_interval != 0:
            return state

        if not state.s_iou and not state.s_beta:
            state.skipped_updates += 1
            logger.info("controller_update_skipped", iteration=state.iteration)
            return state

        if state.s_iou:
            state.t_now = max(float(np.mean(state.s_iou)), self.config.t_floor)
        if state.s_beta:
            median = float(np.median(state.s_beta))
            state.beta_now = max(min(median, self.config.beta_ceiling), MIN_BETA)
        logger.debug(
            "controller_updated",
            iteration=state.iteration,
            t_now=state.t_now,
            beta_now=state.beta_now,
            s_iou_len=len(state.s_iou),
            s_beta_len=len(state.s_beta),
        )
        state.s_iou.clear()
        state.s_beta.clear()
        return state

    def current(self) -> tuple[float, float]:
        """The live (T_now, beta_now) pair."""
        return self.state.t_now, self.state.beta_now

    def snapshot(self) -> ControllerSnapshot:
        """JSON-serializable view for trend logging."""
        return ControllerSnapshot(
            iteration=self.state.iteration,
            t_now=self.state.t_now,
            beta_now=self.state.beta_now,
            s_iou_len=len(self.state.s_iou),
            s_beta_len=len(self.state.s_beta),
        )
