"""
Open-loop simulation: proposal quality follows the schedule, the controller
only watches. Produces the threshold / beta trend and the positive-count
statistics of a run.
"""
from ..assignment.matcher import assign_dynamic_array, match_arrays
from ..assignment.sampler import sample_batch_arrays
from ..config import ExperimentConfig
from ..controller.dynamic import DynamicController
from ..controller.statistics import label_scalars
from ..models.trend import TrendLog
from ..utils.helpers import derive_seed, make_rng
from ..utils.logging import get_logger
from .proposals import gen_proposals_array
from .recorder import TrendRecorder
from .scenes import gen_scene
from .streams import Stream

logger = get_logger(__name__)


def run_open_loop(config: ExperimentConfig, seed: int) -> TrendLog:
    """
    Run the controller against scripted proposals.

    Each iteration draws a scene, proposals at q(i), matches and assigns them
    at the live threshold, samples a batch and feeds the controller the max IoUs
    of the sampled batch plus its positives' label scalars. One trend
    row is written per update tick, after the update.

    Args:
        config: Experiment configuration (controller, simulator)
        seed: Run seed

    Returns:
        TrendLog, a pure function of (config, seed)
    """
    sim = config.simulator
    controller = DynamicController(config.controller)
    recorder = TrendRecorder()
    log = TrendLog(seed=seed)
    logger.info("open_loop_started", seed=seed, iterations=sim.iterations)

    for i in range(sim.iterations):
        scene = gen_scene(derive_seed(seed, Stream.SCENE, i), config=sim.scene)
        q = sim.schedule.scale(i, sim.iterations)
        proposals = gen_proposals_array(
            scene, q, sim.scene.n_per_gt, make_rng(seed, Stream.PROPOSALS, i), sim.scene
        )
        gts = scene.gt_boxes
        max_iou, gt_index = match_arrays(proposals, gts)
        t_now, _ = controller.current()
        labels = assign_dynamic_array(max_iou, gt_index, t_now)
        batch = sample_batch_arrays(
            labels,
            gt_index,
            proposals,
            gts,
            batch_size=sim.batch_size,
            pos_fraction=sim.pos_fraction,
            stats=sim.delta_stats,
            rng=make_rng(seed, Stream.SAMPLING, i),
        )
        recorder.observe(proposals, gts, max_iou, gt_index)
        scalars = label_scalars(batch.targets, config.controller.reduction)
        controller.record(max_iou[batch.indices], scalars)
        state = controller.maybe_update()
        if state.iteration % config.controller.update_interval == 0:
            log.records.append(recorder.flush(state.iteration, state.t_now, state.beta_now))

    logger.info(
        "open_loop_finished",
        seed=seed,
        t_now=controller.state.t_now,
        beta_now=controller.state.beta_now,
        skipped_updates=controller.state.skipped_updates,
    )
    return log
