"""Standardized output headers and diagnostic message templates."""

# Output headers
TREND_CSV_HEADER = (
    "iteration",
    "t_now",
    "beta_now",
    "pos_at_50",
    "pos_at_60",
    "pos_at_70",
    "std_dx",
    "std_dw",
)
RUNS_CSV_HEADER = (
    "point",
    "ablation",
    "seed",
    "status",
    "mean_ap",
    "ap90",
    "final_t_now",
    "final_beta_now",
)
SUMMARY_CSV_HEADER = ("point", "n_runs", "n_failed", "mean_ap", "ap90")
CURVES_CSV_HEADER = ("beta", "x", "loss", "gradient")

# Success messages
SUCCESS_SIMULATE = "Simulated {runs} open-loop run(s) into {out}"
SUCCESS_TRAIN = "Trained {runs} closed-loop run(s) into {out}"
SUCCESS_ABLATE = "Ablated {param} over {points} point(s) x {seeds} seed(s) into {out}"
SUCCESS_CURVES = "Wrote loss curves for {betas} beta value(s) into {out}"

# Error messages
ERROR_DIVERGED = "Training diverged at iteration {iteration}: non-finite {block}"
ERROR_RUNS_FAILED = "{failed} of {total} run(s) failed"
ERROR_CONFIG = "Invalid configuration: {detail}"
ERROR_SCHEMA = "{path}: {location}: {detail}"
ERROR_IO = "Could not write outputs: {detail}"


def run_status(error: str | None) -> str:
    """Status column text for a run ("ok" or the failure)."""
    return "ok" if error is None else f"failed: {error}"
