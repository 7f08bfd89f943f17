class TsnetError(Exception):
    """Base class for errors raised by tsnet."""


class InputError(TsnetError, ValueError):
    """Invalid input data, parameters or configuration (CLI exit code 1)."""


class InvariantError(TsnetError, RuntimeError):
    """An internal invariant was violated (CLI exit code 2)."""


class PipelineError(TsnetError):
    """A pipeline stage failed; wraps the cause and names the stage."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
