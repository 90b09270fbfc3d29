"""Utilities package."""

from .helpers import derive_seed, make_rng, parse_int_list, parse_name_list, parse_number_list
from .io import atomic_write_text, render_csv, write_csv, write_json
from .logging import get_logger, setup_logging
from .response import (
    CommandResult,
    create_error_result,
    create_success_result,
    format_error,
    format_success,
)

__all__ = [
    "CommandResult",
    "create_success_result",
    "create_error_result",
    "format_success",
    "format_error",
    "derive_seed",
    "make_rng",
    "parse_int_list",
    "parse_number_list",
    "parse_name_list",
    "atomic_write_text",
    "render_csv",
    "write_csv",
    "write_json",
    "get_logger",
    "setup_logging",
]
