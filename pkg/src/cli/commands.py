"""
Experiment commands.

Each command takes a validated ExperimentConfig (or input paths), writes its
outputs atomically and returns a CommandResult whose exit_code the entry
point returns.
"""
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import TypeAdapter, ValidationError

from ..config import ConfigFileError, ExperimentConfig, read_json_file
from ..constants.enums import AblationParam, ExperimentMode
from ..constants.messages import (
    CURVES_CSV_HEADER,
    ERROR_CONFIG,
    ERROR_IO,
    ERROR_RUNS_FAILED,
    ERROR_SCHEMA,
    SUCCESS_ABLATE,
    SUCCESS_CURVES,
    SUCCESS_SIMULATE,
    SUCCESS_TRAIN,
)
from ..loss.smooth_l1 import loss_curves
from ..metrics.average_precision import coco_map
from ..models.detection import DetectionRecord, EvalReport, GroundTruthRecord
from ..utils.io import write_csv, write_json
from ..utils.logging import get_logger
from ..utils.response import CommandResult, create_error_result, create_success_result
from ._runner import RunJob, RunOutcome, run_jobs, summarize, write_tables

logger = get_logger(__name__)

DEFAULT_CURVE_BETAS = (0.25, 0.5, 1.0, 2.0)
DEFAULT_CURVE_XS = tuple(float(x) for x in np.linspace(-3.0, 3.0, 121))


def _prepare_out_dir(command: str, out_dir: Path) -> CommandResult | None:
    """Create the output directory; an error result if it is not writable."""
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        marker = out_dir / ".write_check"
        marker.write_text("", encoding="utf-8")
        marker.unlink()
    except OSError as e:
        return create_error_result(
            command, ERROR_IO.format(detail=f"{out_dir}: {e.strerror}"), "io_error"
        )
    return None


def _check_mode(
    command: str, config: ExperimentConfig, mode: ExperimentMode
) -> CommandResult | None:
    if config.mode is not mode:
        detail = f"{command} needs mode {mode.value}, got {config.mode.value}"
        return create_error_result(command, ERROR_CONFIG.format(detail=detail), "usage_error")
    return None


def _finish(
    command: str,
    config: ExperimentConfig,
    outcomes: list[RunOutcome],
    files: list[str],
    success_message: str,
) -> CommandResult:
    """Write <command>_summary.json and build the result."""
    failed = [o for o in outcomes if not o.ok]
    data = {
        "files": files,
        "runs": [
            {
                "point": o.point,
                "ablation": o.ablation.value if o.ablation else None,
                "seed": o.seed,
                "error": o.error,
                "mean_ap": o.mean_ap,
                "ap90": o.ap90,
                "final_t_now": o.final_t_now,
                "final_beta_now": o.final_beta_now,
                "files": o.files,
            }
            for o in outcomes
        ],
    }
    if failed:
        result = create_error_result(
            command,
            ERROR_RUNS_FAILED.format(failed=len(failed), total=len(outcomes)),
            "run_failed",
            data,
        )
    else:
        result = create_success_result(command, success_message, data)
    try:
        write_json(config.out_dir / f"{command}_summary.json", result)
    except OSError as e:
        return create_error_result(command, ERROR_IO.format(detail=e.strerror), "io_error", data)
    return result


def cmd_simulate(config: ExperimentConfig) -> CommandResult:
    """
    Open-loop runs, one per seed.

    Writes trend_seed<seed>.csv and label_stats_seed<seed>.json per seed, plus
    simulate_summary.json.
    """
    command = "simulate"
    error = _check_mode(command, config, ExperimentMode.OPEN_LOOP)
    error = error or _prepare_out_dir(command, config.out_dir)
    if error:
        return error
    jobs = [
        RunJob(point="open-loop", seed=seed, config=config, run_dir=config.out_dir)
        for seed in config.seeds
    ]
    outcomes = run_jobs(jobs, config.parallel)
    files = [name for o in outcomes for name in o.files]
    message = SUCCESS_SIMULATE.format(runs=len(outcomes), out=config.out_dir)
    return _finish(command, config, outcomes, files, message)


def _closed_loop_jobs(
    config: ExperimentConfig, out_dir: Path, point_prefix: str | None = None
) -> list[RunJob]:
    jobs = []
    for ablation in config.ablations:
        if point_prefix is None:
            point, run_dir = ablation.value, out_dir / ablation.value
        elif len(config.ablations) == 1:
            point, run_dir = point_prefix, out_dir / point_prefix / ablation.value
        else:
            point = f"{ablation.value}/{point_prefix}"
            run_dir = out_dir / point_prefix / ablation.value
        jobs.extend(
            RunJob(point=point, seed=seed, config=config, run_dir=run_dir, ablation=ablation)
            for seed in config.seeds
        )
    return jobs


def _relative_files(
    config: ExperimentConfig, jobs: list[RunJob], outcomes: list[RunOutcome]
) -> list[str]:
    files = []
    for job, outcome in zip(jobs, outcomes):
        prefix = job.run_dir.relative_to(config.out_dir).as_posix()
        files.extend(f"{prefix}/{name}" for name in outcome.files)
    return files


def cmd_train(config: ExperimentConfig) -> CommandResult:
    """
    Closed-loop runs for every configured ablation mode and seed.

    Writes <ablation>/trend_seed<seed>.csv, label_stats_seed<seed>.json and
    eval_seed<seed>.json per run, plus train_runs.csv, train_summary.csv and
    train_summary.json.
    """
    command = "train"
    error = _check_mode(command, config, ExperimentMode.CLOSED_LOOP)
    error = error or _prepare_out_dir(command, config.out_dir)
    if error:
        return error
    jobs = _closed_loop_jobs(config, config.out_dir)
    outcomes = run_jobs(jobs, config.parallel)
    files = _relative_files(config, jobs, outcomes)
    files += write_tables(config.out_dir, command, outcomes)
    message = SUCCESS_TRAIN.format(runs=len(outcomes), out=config.out_dir)
    return _finish(command, config, outcomes, files, message)


def grid_point_label(param: AblationParam, value: float) -> str:
    """Point name of one grid value ("k_iou=75", "fixed_beta=0.5")."""
    if param is AblationParam.FIXED_BETA:
        return f"{param.value}={float(value)!r}"
    return f"{param.value}={int(value)}"


def cmd_ablate(config: ExperimentConfig) -> CommandResult:
    """
    One closed-loop run per grid point, ablation mode and seed.

    Failed runs are recorded in ablate_runs.csv and the rest continue;
    ablate_summary.csv holds mean_ap and ap90 per point.
    """
    command = "ablate"
    if config.grid is None:
        return create_error_result(
            command, ERROR_CONFIG.format(detail="ablate needs a parameter grid"), "usage_error"
        )
    error = _check_mode(command, config, ExperimentMode.CLOSED_LOOP)
    error = error or _prepare_out_dir(command, config.out_dir)
    if error:
        return error

    jobs: list[RunJob] = []
    for value in config.grid.values:
        try:
            point_config = config.with_param(config.grid.param, value)
        except ValidationError as e:
            detail = f"{config.grid.param.value}={value}: {e.errors()[0]['msg']}"
            return create_error_result(command, ERROR_CONFIG.format(detail=detail), "config_error")
        label = grid_point_label(config.grid.param, value)
        jobs.extend(_closed_loop_jobs(point_config, config.out_dir, point_prefix=label))

    outcomes = run_jobs(jobs, config.parallel)
    files = _relative_files(config, jobs, outcomes)
    files += write_tables(config.out_dir, command, outcomes)
    message = SUCCESS_ABLATE.format(
        param=config.grid.param.value,
        points=len(summarize(outcomes)),
        seeds=len(config.seeds),
        out=config.out_dir,
    )
    return _finish(command, config, outcomes, files, message)


def cmd_curves(
    out_dir: Path,
    betas: Sequence[float] = DEFAULT_CURVE_BETAS,
    xs: Sequence[float] = DEFAULT_CURVE_XS,
) -> CommandResult:
    """Write curves.csv with SmoothL1 loss and gradient samples (beta, x, loss, gradient)."""
    command = "curves"
    error = _prepare_out_dir(command, out_dir)
    if error:
        return error
    try:
        rows = loss_curves(betas, xs)
    except ValueError as e:
        return create_error_result(command, ERROR_CONFIG.format(detail=str(e)), "usage_error")
    path = write_csv(out_dir / "curves.csv", CURVES_CSV_HEADER, rows)
    return create_success_result(
        command,
        SUCCESS_CURVES.format(betas=len(betas), out=out_dir),
        {"files": [path.name], "rows": len(rows)},
    )


def _load_records(path: Path, adapter: TypeAdapter) -> list:
    data = read_json_file(path)
    try:
        return adapter.validate_python(data)
    except ValidationError as e:
        item = e.errors()[0]
        location = "".join(
            f"[{part}]" if isinstance(part, int) else f".{part}" for part in item["loc"]
        ) or "<root>"
        raise ConfigFileError(
            ERROR_SCHEMA.format(path=path, location=location, detail=item["msg"])
        ) from e


def cmd_eval(
    detections_path: Path, ground_truth_path: Path
) -> tuple[CommandResult, EvalReport | None]:
    """
    Evaluate a detections file against a ground-truth file.

    Returns:
        (result, report); report is None when an input violates its schema
    """
    command = "eval"
    try:
        det_records = _load_records(detections_path, TypeAdapter(list[DetectionRecord]))
        gt_records = _load_records(ground_truth_path, TypeAdapter(list[GroundTruthRecord]))
        dets = _convert(detections_path, det_records, lambda r: r.to_detection())
        gts = _convert(ground_truth_path, gt_records, lambda r: r.to_box())
    except ConfigFileError as e:
        return create_error_result(command, str(e), "schema_error"), None

    report = coco_map(dets, gts)
    logger.info(
        "eval_finished", detections=len(dets), ground_truths=len(gts), mean_ap=report.mean_ap
    )
    result = create_success_result(
        command, f"Evaluated {len(dets)} detection(s)", report.model_dump(mode="json")
    )
    return result, report


def _convert(path: Path, records: list, convert: Callable[[Any], Any]) -> list:
    converted = []
    for index, record in enumerate(records):
        try:
            converted.append(convert(record))
        except ValueError as e:
            detail = e.errors()[0]["msg"] if isinstance(e, ValidationError) else str(e)
            raise ConfigFileError(
                ERROR_SCHEMA.format(path=path, location=f"[{index}].box", detail=detail)
            ) from e
    return converted
