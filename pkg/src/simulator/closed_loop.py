"""
Closed-loop training of the toy detector.

Per iteration: draw a scene, build proposals from fresh jitter plus the
detector's own refinements, match, assign labels, sample a batch, take one
SGD step with the classification and SmoothL1 losses, and (when any dynamic
component is on) feed the controller. Labels and beta come from pluggable
policies so the static baseline can be wired on its own.
"""
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from ..assignment.matcher import assign_dynamic_array, assign_static_array, match_arrays
from ..assignment.sampler import SampledBatch, sample_batch_arrays
from ..config import ExperimentConfig
from ..constants.enums import Ablation
from ..controller.dynamic import DynamicController
from ..controller.statistics import label_scalars
from ..metrics.average_precision import report_from_arrays
from ..metrics.nms import nms_arrays
from ..models.detection import EvalReport
from ..models.trend import TrendLog
from ..utils.helpers import derive_seed, make_rng
from ..utils.logging import get_logger
from .detector import StepLosses, ToyDetector, TrainingDivergedError
from .evidence import Evidence, observe
from .proposals import background_boxes, clip_boxes, jitter_boxes
from .recorder import TrendRecorder
from .scenes import Scene, gen_scene
from .streams import Stream

logger = get_logger(__name__)


class LabelPolicy(Protocol):
    def assign(self, max_iou: np.ndarray, gt_index: np.ndarray) -> np.ndarray: ...

    @property
    def threshold(self) -> float: ...


class BetaPolicy(Protocol):
    @property
    def beta(self) -> float: ...


@dataclass(frozen=True)
class StaticLabelPolicy:
    t_pos: float = 0.5
    t_neg: float = 0.5

    def assign(self, max_iou: np.ndarray, gt_index: np.ndarray) -> np.ndarray:
        return assign_static_array(max_iou, gt_index, self.t_pos, self.t_neg)

    @property
    def threshold(self) -> float:
        return self.t_pos


@dataclass(frozen=True)
class DynamicLabelPolicy:
    controller: DynamicController

    def assign(self, max_iou: np.ndarray, gt_index: np.ndarray) -> np.ndarray:
        return assign_dynamic_array(max_iou, gt_index, self.controller.state.t_now)

    @property
    def threshold(self) -> float:
        return self.controller.state.t_now


@dataclass(frozen=True)
class FixedBetaPolicy:
    value: float = 1.0

    @property
    def beta(self) -> float:
        return self.value


@dataclass(frozen=True)
class DynamicBetaPolicy:
    controller: DynamicController

    @property
    def beta(self) -> float:
        return self.controller.state.beta_now


@dataclass
class ClosedLoopResult:
    detector: ToyDetector
    trend: TrendLog
    report: EvalReport


class ClosedLoopTrainer:
    """
    One seeded closed-loop run.

    Without explicit policies, the ablation decides: dynamic labels and/or
    dynamic beta share one controller; the baseline creates none.
    """

    def __init__(
        self,
        config: ExperimentConfig,
        ablation: Ablation,
        seed: int,
        label_policy: LabelPolicy | None = None,
        beta_policy: BetaPolicy | None = None,
    ):
        self.config = config
        self.sim = config.simulator
        self.trainer = config.simulator.trainer
        self.ablation = ablation
        self.seed = seed
        self.detector = ToyDetector.from_config(self.trainer)

        needs_controller = (label_policy is None and ablation.dynamic_labels) or (
            beta_policy is None and ablation.dynamic_beta
        )
        self.controller = DynamicController(config.controller) if needs_controller else None

        if label_policy is None:
            label_policy = (
                DynamicLabelPolicy(self.controller)
                if ablation.dynamic_labels and self.controller is not None
                else StaticLabelPolicy(self.trainer.static_t_pos, self.trainer.static_t_neg)
            )
        if beta_policy is None:
            beta_policy = (
                DynamicBetaPolicy(self.controller)
                if ablation.dynamic_beta and self.controller is not None
                else FixedBetaPolicy(self.trainer.fixed_beta)
            )
        self.label_policy = label_policy
        self.beta_policy = beta_policy
        self.recorder = TrendRecorder()
        self.trend = TrendLog(seed=seed)

    # Proposals

    def scene_for(self, iteration: int) -> Scene:
        return gen_scene(derive_seed(self.seed, Stream.SCENE, iteration), config=self.sim.scene)

    def _observe(
        self, proposals: np.ndarray, gts: np.ndarray, rng: np.random.Generator
    ) -> Evidence:
        max_iou, gt_index = match_arrays(proposals, gts)
        return observe(
            proposals, gts, max_iou, gt_index, self.sim.delta_stats, self.sim.evidence, rng
        )

    def _refined(
        self, scene: Scene, q: float, n: int, rng: np.random.Generator, nms_threshold: float
    ) -> tuple[np.ndarray, np.ndarray]:
        """Detector refinements of n jittered copies per ground truth, after NMS."""
        jittered, _ = clip_boxes(
            jitter_boxes(scene.gt_boxes, q, n, rng),
            scene.width,
            scene.height,
            self.sim.scene.min_side,
        )
        evidence = self._observe(jittered, scene.gt_boxes, rng)
        refined, keep = clip_boxes(
            self.detector.refine(jittered, evidence, self.sim.delta_stats),
            scene.width,
            scene.height,
            self.sim.scene.min_side,
        )
        scores = self.detector.scores(evidence)[keep]
        kept = nms_arrays(refined, scores, nms_threshold) if len(refined) else np.zeros(0, int)
        return refined[kept], scores[kept]

    def proposals_for(self, iteration: int) -> tuple[Scene, np.ndarray]:
        """
        Training proposals of one iteration.

        Fresh jitter at q(i) and refinements of a second jittered set split the
        per-ground-truth budget; background boxes are appended.
        """
        scene = self.scene_for(iteration)
        scene_config = self.sim.scene
        rng = make_rng(self.seed, Stream.PROPOSALS, iteration)
        q = self.sim.schedule.scale(iteration, self.sim.iterations)
        n_refined = int(round(scene_config.n_per_gt * self.trainer.refine_fraction))
        n_fresh = scene_config.n_per_gt - n_refined

        fresh = jitter_boxes(scene.gt_boxes, q, n_fresh, rng)
        background = background_boxes(
            scene_config.n_background, scene.width, scene.height, scene_config, rng
        )
        fresh, _ = clip_boxes(
            np.concatenate((fresh, background)), scene.width, scene.height, scene_config.min_side
        )
        if n_refined == 0:
            return scene, fresh
        refined, _ = self._refined(scene, q, n_refined, rng, self.trainer.proposal_nms_threshold)
        return scene, np.concatenate((fresh, refined))

    # Training

    def sample(
        self,
        proposals: np.ndarray,
        gts: np.ndarray,
        labels: np.ndarray,
        gt_index: np.ndarray,
        iteration: int,
    ) -> SampledBatch:
        return sample_batch_arrays(
            labels,
            gt_index,
            proposals,
            gts,
            batch_size=self.sim.batch_size,
            pos_fraction=self.sim.pos_fraction,
            stats=self.sim.delta_stats,
            rng=make_rng(self.seed, Stream.SAMPLING, iteration),
        )

    def lr_scale(self, iteration: int) -> float:
        decay_at = self.trainer.lr_decay_at * self.sim.iterations
        return self.trainer.lr_decay if iteration >= decay_at else 1.0

    def step(self, iteration: int) -> StepLosses:
        """Run training iteration `iteration` (0-based)."""
        scene, proposals = self.proposals_for(iteration)
        gts = scene.gt_boxes
        max_iou, gt_index = match_arrays(proposals, gts)
        labels = self.label_policy.assign(max_iou, gt_index)
        batch = self.sample(proposals, gts, labels, gt_index, iteration)

        evidence = observe(
            proposals[batch.indices],
            gts,
            max_iou[batch.indices],
            gt_index[batch.indices],
            self.sim.delta_stats,
            self.sim.evidence,
            make_rng(self.seed, Stream.EVIDENCE, iteration),
        )
        losses = self.detector.train_step(
            evidence,
            batch.labels,
            batch.targets,
            self.beta_policy.beta,
            iteration,
            lr_scale=self.lr_scale(iteration),
            regression_reduction=self.trainer.regression_reduction,
            classification_reduction=self.trainer.classification_reduction,
        )

        self.recorder.observe(proposals, gts, max_iou, gt_index)
        if self.controller is not None:
            scalars = label_scalars(batch.targets, self.config.controller.reduction)
            self.controller.record(max_iou[batch.indices], scalars)
            self.controller.maybe_update()
        completed = iteration + 1
        if completed % self.config.controller.update_interval == 0:
            self.trend.records.append(
                self.recorder.flush(completed, self.label_policy.threshold, self.beta_policy.beta)
            )
        return losses

    def train(self) -> TrendLog:
        for i in range(self.sim.iterations):
            try:
                self.step(i)
            except TrainingDivergedError as e:
                logger.error(
                    "training_diverged",
                    seed=self.seed,
                    ablation=self.ablation.value,
                    iteration=e.iteration,
                    block=e.block,
                )
                raise
        return self.trend

    # Evaluation

    def evaluate(self) -> EvalReport:
        """
        AP on held-out scenes.

        Proposals are jittered at the evaluation noise scale, refined and scored
        by the detector, and deduplicated by NMS; matching is per scene with a
        global score ranking.
        """
        images = []
        for e in range(self.trainer.eval_scenes):
            scene = gen_scene(derive_seed(self.seed, Stream.EVAL_SCENE, e), config=self.sim.scene)
            rng = make_rng(self.seed, Stream.EVAL_PROPOSALS, e)
            detections, scores = self._refined(
                scene, self.trainer.eval_noise, self.sim.scene.n_per_gt, rng,
                self.trainer.eval_nms_threshold,
            )
            images.append((detections, scores, scene.gt_boxes))
        return report_from_arrays(images)


def run_closed_loop(config: ExperimentConfig, ablation: Ablation, seed: int) -> ClosedLoopResult:
    """
    Train the toy detector under one ablation mode and evaluate it.

    Returns:
        ClosedLoopResult (detector, trend log, eval report); a pure function of
        (config, ablation, seed)

    Raises:
        TrainingDivergedError: If weights become non-finite
    """
    logger.info("closed_loop_started", seed=seed, ablation=ablation.value)
    trainer = ClosedLoopTrainer(config, ablation, seed)
    trend = trainer.train()
    report = trainer.evaluate()
    logger.info(
        "closed_loop_finished",
        seed=seed,
        ablation=ablation.value,
        mean_ap=report.mean_ap,
        ap90=report.ap90,
    )
    return ClosedLoopResult(detector=trainer.detector, trend=trend, report=report)
