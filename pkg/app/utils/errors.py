"""
Exception hierarchy for the engine.
Each class carries the process exit code used by the CLI.
"""


class WallChamberError(Exception):
    """Base error of the engine."""

    exit_code: int = 4


class InputFormatError(WallChamberError, ValueError):
    """Malformed input: quiver file syntax, loops, cycles, bad vectors."""

    exit_code = 2


class PreconditionError(WallChamberError, ValueError):
    """An operation was called outside its domain."""

    exit_code = 3


class ConsistencyError(WallChamberError, RuntimeError):
    """An internal invariant does not hold."""

    exit_code = 4
