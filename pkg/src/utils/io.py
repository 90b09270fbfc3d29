"""
Atomic file output for experiment artifacts.
A file is either completely written or absent.
"""
import csv
import io
import json
import os
import tempfile
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel


def atomic_write_text(path: str | Path, text: str) -> Path:
    """
    Write text to path via a temp file in the same directory and os.replace.

    Args:
        path: Destination file
        text: Full file contents

    Returns:
        The destination path
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    return target


def format_float(value: float | None) -> str:
    """Locale independent float text ('' for missing values)."""
    if value is None:
        return ""
    return repr(float(value))


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render rows as CSV text with LF line endings and repr-exact floats."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) or v is None else v for v in row])
    return buffer.getvalue()


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Atomically write a CSV file."""
    return atomic_write_text(path, render_csv(header, rows))


def write_json(path: str | Path, payload: BaseModel | dict | list) -> Path:
    """Atomically write a JSON document (pydantic models dumped in JSON mode)."""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    return atomic_write_text(path, text)
