"""
Linear toy detector head trained with analytic gradients.

The regressor maps [1, observed offsets] to normalized offsets; the
classifier is a logistic model over [1, observed IoU, mean |observed offset|].
Both start at zero, so the untrained detector leaves proposals in place and
scores everything 0.5.
"""
from dataclasses import dataclass, field

import numpy as np

from ..config import TrainerConfig
from ..constants.messages import ERROR_DIVERGED
from ..geometry.coder import decode_array, denormalize_array
from ..loss.classification import binary_ce_logits, sigmoid
from ..loss.smooth_l1 import Reduction, reduce_losses, smooth_l1_array
from ..models.boxes import DeltaStats
from .evidence import Evidence

REGRESSOR = "regressor"
CLASSIFIER = "classifier"


class TrainingDivergedError(RuntimeError):
    """A weight block became non-finite."""

    def __init__(self, iteration: int, block: str):
        self.iteration = iteration
        self.block = block
        super().__init__(ERROR_DIVERGED.format(iteration=iteration, block=block))


@dataclass(frozen=True)
class StepLosses:
    classification: float
    regression: float
    num_pos: int


@dataclass
class ToyDetector:
    """Weights, learning rates and step count of the toy head."""

    reg_weights: np.ndarray = field(default_factory=lambda: np.zeros((4, 5)))
    cls_weights: np.ndarray = field(default_factory=lambda: np.zeros(3))
    reg_lr: float = 0.1
    cls_lr: float = 0.5
    steps: int = 0

    @classmethod
    def from_config(cls, config: TrainerConfig) -> "ToyDetector":
        return cls(reg_lr=config.reg_lr, cls_lr=config.cls_lr)

    def predict_offsets(self, evidence: Evidence) -> np.ndarray:
        """Normalized offset predictions, shape (N, 4)."""
        return evidence.regression_features() @ self.reg_weights.T

    def logits(self, evidence: Evidence) -> np.ndarray:
        return evidence.classification_features() @ self.cls_weights

    def scores(self, evidence: Evidence) -> np.ndarray:
        """Foreground probabilities in [0, 1]."""
        return sigmoid(self.logits(evidence))

    def refine(self, proposals: np.ndarray, evidence: Evidence, stats: DeltaStats) -> np.ndarray:
        """Decode predicted offsets onto the proposals (unclipped)."""
        if len(proposals) == 0:
            return np.zeros((0, 4))
        return decode_array(proposals, denormalize_array(self.predict_offsets(evidence), stats))

    def gradients(
        self,
        evidence: Evidence,
        labels: np.ndarray,
        targets: np.ndarray,
        beta: float,
        regression_reduction: Reduction = Reduction.MEAN,
        classification_reduction: Reduction = Reduction.MEAN,
    ) -> tuple[np.ndarray, np.ndarray, StepLosses]:
        """
        Losses and weight gradients on one sampled batch.

        Args:
            evidence: Observations of the batch, positives first
            labels: (B,) 1 for positives, 0 for negatives
            targets: (P, 4) normalized regression labels of the positive prefix
            beta: SmoothL1 beta
            regression_reduction: Combine per-positive losses
            classification_reduction: Combine per-proposal losses

        Returns:
            (regressor gradient (4, 5), classifier gradient (3,), losses)
        """
        labels = np.asarray(labels, dtype=np.float64)
        cls_x = evidence.classification_features()
        cls_values, cls_grad = binary_ce_logits(cls_x @ self.cls_weights, labels)
        if classification_reduction is Reduction.MEAN and len(labels):
            cls_grad = cls_grad / len(labels)
        cls_weight_grad = cls_x.T @ cls_grad

        num_pos = len(targets)
        reg_weight_grad = np.zeros_like(self.reg_weights)
        reg_value = 0.0
        if num_pos:
            reg_x = evidence.take(np.arange(num_pos)).regression_features()
            residual = reg_x @ self.reg_weights.T - targets
            values, grads = smooth_l1_array(residual, beta)
            reg_value = reduce_losses(values.sum(axis=1), regression_reduction)
            if regression_reduction is Reduction.MEAN:
                grads = grads / num_pos
            reg_weight_grad = grads.T @ reg_x

        losses = StepLosses(
            classification=reduce_losses(cls_values, classification_reduction),
            regression=reg_value,
            num_pos=num_pos,
        )
        return reg_weight_grad, cls_weight_grad, losses

    def apply_gradients(
        self, reg_grad: np.ndarray, cls_grad: np.ndarray, iteration: int, lr_scale: float = 1.0
    ) -> None:
        """
        One plain SGD step.

        Raises:
            TrainingDivergedError: If either weight block is non-finite afterwards
        """
        self.reg_weights = self.reg_weights - lr_scale * self.reg_lr * reg_grad
        self.cls_weights = self.cls_weights - lr_scale * self.cls_lr * cls_grad
        self.steps += 1
        if not np.isfinite(self.reg_weights).all():
            raise TrainingDivergedError(iteration, REGRESSOR)
        if not np.isfinite(self.cls_weights).all():
            raise TrainingDivergedError(iteration, CLASSIFIER)

    def train_step(
        self,
        evidence: Evidence,
        labels: np.ndarray,
        targets: np.ndarray,
        beta: float,
        iteration: int,
        lr_scale: float = 1.0,
        regression_reduction: Reduction = Reduction.MEAN,
        classification_reduction: Reduction = Reduction.MEAN,
    ) -> StepLosses:
        """Compute gradients on the batch and apply them."""
        reg_grad, cls_grad, losses = self.gradients(
            evidence, labels, targets, beta, regression_reduction, classification_reduction
        )
        self.apply_gradients(reg_grad, cls_grad, iteration, lr_scale)
        return losses
