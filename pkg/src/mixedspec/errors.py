"""Exception hierarchy shared by every module."""


class MixedSpecError(Exception):
    """Base class for errors raised by this package."""


class InputError(MixedSpecError, ValueError):
    """Malformed or out-of-range input."""


class ContractError(MixedSpecError, ValueError):
    """An operation was called outside its precondition."""


class ComputationError(MixedSpecError, RuntimeError):
    """A numerical routine failed to reach its accuracy target."""


class GraphFormatError(InputError):
    """Syntax or semantic error in the graph text format."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
