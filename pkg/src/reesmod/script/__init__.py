from .parser import (
    Diagnostic,
    ParseResult,
    Script,
    parse,
    render_script,
)
from .interpreter import ExecutionOptions, ExecutionOutcome, execute

__all__ = [
    "Diagnostic",
    "ParseResult",
    "Script",
    "parse",
    "render_script",
    "ExecutionOptions",
    "ExecutionOutcome",
    "execute",
]
