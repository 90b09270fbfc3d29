"""Command result records and diagnostic formatting."""

from typing import Any

from pydantic import BaseModel, Field


class CommandResult(BaseModel):
    """Standardized command result.

    Every CLI command summarises its run in this format; it is written as the
    command's summary JSON and drives the process exit code.
    """

    success: bool = Field(
        ...,
        description="Whether every requested run completed and every output was written"
    )

    message: str = Field(
        ...,
        description="Human-readable message"
    )

    data: dict[str, Any] = Field(
        default_factory=dict,
        description="Structured data payload (output paths, per-run summaries)"
    )

    command: str = Field(
        ...,
        description="Command identifier (simulate, train, eval, ablate, curves)"
    )

    error_code: str | None = Field(
        None,
        description="Machine-readable error code if failed"
    )

    @property
    def exit_code(self) -> int:
        """Process exit code: 0 on success, 2 for usage errors, 1 otherwise."""
        if self.success:
            return 0
        return 2 if self.error_code in {"config_error", "schema_error", "usage_error"} else 1


def format_success(message: str) -> str:
    """Format success message.

    Args:
        message: Main success message

    Returns:
        Formatted string
    """
    return f"✅ {message}"


def format_error(message: str, error_code: str | None = None) -> str:
    """Format error message.

    Args:
        message: Error message
        error_code: Optional error code

    Returns:
        Formatted string
    """
    if error_code:
        return f"❌ Error [{error_code}]: {message}"
    return f"❌ {message}"


def create_success_result(
    command: str,
    message: str,
    data: dict[str, Any],
) -> CommandResult:
    """Create success result.

    Args:
        command: Command identifier
        message: Success message
        data: Result data

    Returns:
        CommandResult instance
    """
    return CommandResult(
        success=True,
        message=message,
        data=data,
        command=command,
    )


def create_error_result(
    command: str,
    message: str,
    error_code: str,
    data: dict[str, Any] | None = None,
) -> CommandResult:
    """Create error result.

    Args:
        command: Command identifier
        message: Error message
        error_code: Machine-readable error code
        data: Optional error details

    Returns:
        CommandResult instance
    """
    return CommandResult(
        success=False,
        message=message,
        data=data or {},
        command=command,
        error_code=error_code,
    )
