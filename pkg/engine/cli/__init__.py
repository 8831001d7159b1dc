from engine.cli.commands import (
    CommandContext,
    cmd_check,
    cmd_eigen,
    cmd_eval,
    cmd_suite,
    cmd_sweep,
    cmd_tightness,
)
from engine.cli.renderer import render_error, render_note

__all__ = [
    "CommandContext",
    "cmd_check",
    "cmd_eigen",
    "cmd_eval",
    "cmd_suite",
    "cmd_sweep",
    "cmd_tightness",
    "render_error",
    "render_note",
]
