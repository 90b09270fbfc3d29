"""
Run execution and per-run outputs (internal module).

Commands in commands.py build RunJob lists and hand them here. Each job
writes its own files, so parallel workers never share an output file; results
come back in job order.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..config import ExperimentConfig
from ..constants.enums import Ablation
from ..constants.messages import SUMMARY_CSV_HEADER, RUNS_CSV_HEADER, run_status
from ..simulator.closed_loop import run_closed_loop
from ..simulator.detector import TrainingDivergedError
from ..simulator.open_loop import run_open_loop
from ..utils.io import atomic_write_text, render_csv, write_json
from ..utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class RunJob:
    """One seeded run and where its files go."""

    point: str
    seed: int
    config: ExperimentConfig
    run_dir: Path
    ablation: Ablation | None = None

    @property
    def closed_loop(self) -> bool:
        return self.ablation is not None


@dataclass(frozen=True)
class RunOutcome:
    point: str
    seed: int
    ablation: Ablation | None
    error: str | None = None
    mean_ap: float | None = None
    ap90: float | None = None
    final_t_now: float | None = None
    final_beta_now: float | None = None
    files: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.error is None

    def as_row(self) -> list:
        return [
            self.point,
            self.ablation.value if self.ablation else "",
            self.seed,
            run_status(self.error),
            self.mean_ap,
            self.ap90,
            self.final_t_now,
            self.final_beta_now,
        ]


def execute_job(job: RunJob) -> RunOutcome:
    """
    Run one job and write its trend CSV and label-stats JSON (plus the eval
    JSON for closed-loop runs).

    Divergence is reported in the outcome instead of raised so sibling runs
    keep going.
    """
    job.run_dir.mkdir(parents=True, exist_ok=True)
    trend_path = job.run_dir / f"trend_seed{job.seed}.csv"
    stats_path = job.run_dir / f"label_stats_seed{job.seed}.json"

    if not job.closed_loop:
        trend = run_open_loop(job.config, job.seed)
        atomic_write_text(trend_path, trend.to_csv())
        write_json(stats_path, trend.label_stats_payload())
        last = trend.records[-1] if trend.records else None
        return RunOutcome(
            point=job.point,
            seed=job.seed,
            ablation=None,
            final_t_now=last.t_now if last else job.config.controller.t_init,
            final_beta_now=last.beta_now if last else job.config.controller.beta_init,
            files=[trend_path.name, stats_path.name],
        )

    try:
        result = run_closed_loop(job.config, job.ablation, job.seed)
    except TrainingDivergedError as e:
        return RunOutcome(point=job.point, seed=job.seed, ablation=job.ablation, error=str(e))

    eval_path = job.run_dir / f"eval_seed{job.seed}.json"
    atomic_write_text(trend_path, result.trend.to_csv())
    write_json(stats_path, result.trend.label_stats_payload())
    write_json(eval_path, result.report)
    last = result.trend.records[-1] if result.trend.records else None
    return RunOutcome(
        point=job.point,
        seed=job.seed,
        ablation=job.ablation,
        mean_ap=result.report.mean_ap,
        ap90=result.report.ap90,
        final_t_now=last.t_now if last else None,
        final_beta_now=last.beta_now if last else None,
        files=[trend_path.name, stats_path.name, eval_path.name],
    )


def run_jobs(jobs: list[RunJob], parallel: int = 1) -> list[RunOutcome]:
    """Execute jobs, in a process pool when parallel > 1; outcomes keep job order."""
    logger.info("runs_started", count=len(jobs), parallel=parallel)
    if parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(parallel, len(jobs))) as pool:
            outcomes = list(pool.map(execute_job, jobs))
    else:
        outcomes = [execute_job(job) for job in jobs]
    failed = sum(not outcome.ok for outcome in outcomes)
    for outcome in outcomes:
        if not outcome.ok:
            logger.error(
                "run_failed", point=outcome.point, seed=outcome.seed, error=outcome.error
            )
    logger.info("runs_finished", count=len(outcomes), failed=failed)
    return outcomes


def _mean(values: list[float]) -> float | None:
    return float(np.mean(values)) if values else None


def summarize(outcomes: list[RunOutcome]) -> list[list]:
    """One summary row per point, in first-appearance order."""
    points: dict[str, list[RunOutcome]] = {}
    for outcome in outcomes:
        points.setdefault(outcome.point, []).append(outcome)
    rows = []
    for point, group in points.items():
        ok = [o for o in group if o.ok]
        rows.append(
            [
                point,
                len(group),
                len(group) - len(ok),
                _mean([o.mean_ap for o in ok if o.mean_ap is not None]),
                _mean([o.ap90 for o in ok if o.ap90 is not None]),
            ]
        )
    return rows


def write_tables(out_dir: Path, prefix: str, outcomes: list[RunOutcome]) -> list[str]:
    """Write <prefix>_runs.csv and <prefix>_summary.csv; returns file names."""
    runs_path = out_dir / f"{prefix}_runs.csv"
    summary_path = out_dir / f"{prefix}_summary.csv"
    atomic_write_text(runs_path, render_csv(RUNS_CSV_HEADER, (o.as_row() for o in outcomes)))
    atomic_write_text(summary_path, render_csv(SUMMARY_CSV_HEADER, summarize(outcomes)))
    return [runs_path.name, summary_path.name]
