"""
Command-line entry point: simulate | train | eval | ablate | curves.

Configuration comes from an optional JSON file (--config) with flags layered
on top. Environment variables are never read.
"""
import argparse
import sys
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from .cli import cmd_ablate, cmd_curves, cmd_eval, cmd_simulate, cmd_train
from .cli.commands import DEFAULT_CURVE_BETAS, DEFAULT_CURVE_XS
from .config import ConfigFileError, describe_validation_error, load_experiment_config
from .constants.enums import ExperimentMode
from .constants.messages import ERROR_CONFIG
from .utils.helpers import parse_int_list, parse_name_list, parse_number_list
from .utils.logging import get_logger, setup_logging
from .utils.response import CommandResult, create_error_result, format_error, format_success

logger = get_logger(__name__)

_MODES = {
    "simulate": ExperimentMode.OPEN_LOOP,
    "train": ExperimentMode.CLOSED_LOOP,
    "ablate": ExperimentMode.CLOSED_LOOP,
}


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="JSON experiment config")
    parser.add_argument("--out", type=Path, help="Output directory")
    parser.add_argument("--seeds", type=parse_int_list, help="Comma separated seeds")
    parser.add_argument("--parallel", type=int, help="Worker processes")
    parser.add_argument("--iterations", type=int, help="Training iterations per run")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dynrcnn",
        description="Dynamic label assignment and SmoothL1 beta training simulator",
    )
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (logs go to stderr)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", help="Open-loop threshold and beta trends")
    _add_run_flags(simulate)

    train = sub.add_parser("train", help="Closed-loop toy detector training")
    _add_run_flags(train)
    train.add_argument("--ablation", type=parse_name_list, help="baseline,dla,dsl,dla+dsl")

    ablate = sub.add_parser("ablate", help="One-parameter closed-loop grid")
    _add_run_flags(ablate)
    ablate.add_argument("--ablation", type=parse_name_list, help="Ablation modes to run")
    ablate.add_argument("--param", help="k_iou, k_beta, update_interval or fixed_beta")
    ablate.add_argument("--values", type=parse_number_list, help="Comma separated grid values")

    evaluate = sub.add_parser("eval", help="Evaluate a detections file")
    evaluate.add_argument("detections", type=Path, help="Detections JSON")
    evaluate.add_argument("ground_truth", type=Path, help="Ground-truth JSON")

    curves = sub.add_parser("curves", help="SmoothL1 loss and gradient curves")
    curves.add_argument("--out", type=Path, default=Path("runs"), help="Output directory")
    curves.add_argument("--betas", type=parse_number_list, help="Comma separated beta values")
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    """Nested config overrides from the flags that were given."""
    overrides: dict[str, Any] = {"mode": _MODES[args.command].value}
    if args.out is not None:
        overrides["out_dir"] = str(args.out)
    if args.seeds is not None:
        overrides["seeds"] = args.seeds
    if args.parallel is not None:
        overrides["parallel"] = args.parallel
    if args.iterations is not None:
        overrides["simulator"] = {"iterations": args.iterations}
    if args.log_level is not None:
        overrides["log_level"] = args.log_level
    if getattr(args, "ablation", None) is not None:
        overrides["ablations"] = args.ablation
    grid: dict[str, Any] = {}
    if getattr(args, "param", None) is not None:
        grid["param"] = args.param
    if getattr(args, "values", None) is not None:
        grid["values"] = args.values
    if grid:
        overrides["grid"] = grid
    return overrides


def _report(result: CommandResult) -> int:
    if result.success:
        print(format_success(result.message), file=sys.stderr)
    else:
        print(format_error(result.message, result.error_code), file=sys.stderr)
    return result.exit_code


def run(args: argparse.Namespace) -> int:
    """Dispatch parsed arguments to a command; returns the exit code."""
    if args.command == "eval":
        result, report = cmd_eval(args.detections, args.ground_truth)
        if report is not None:
            print(report.model_dump_json(indent=2))
        return _report(result)

    if args.command == "curves":
        betas = args.betas if args.betas is not None else DEFAULT_CURVE_BETAS
        return _report(cmd_curves(args.out, betas, DEFAULT_CURVE_XS))

    try:
        config = load_experiment_config(args.config, _overrides(args))
    except ConfigFileError as e:
        return _report(create_error_result(args.command, str(e), "config_error"))
    except ValidationError as e:
        detail = describe_validation_error(e)
        return _report(
            create_error_result(args.command, ERROR_CONFIG.format(detail=detail), "config_error")
        )
    setup_logging(config.log_level)
    logger.info("command_started", command=args.command, seeds=config.seeds)

    commands = {"simulate": cmd_simulate, "train": cmd_train, "ablate": cmd_ablate}
    return _report(commands[args.command](config))


def main(argv: list[str] | None = None) -> int:
    """Console script entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    setup_logging(args.log_level or "INFO")
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
