"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so each class carries one.
"""


class MetabettiError(Exception):
    exit_code = 1


class InvalidInput(MetabettiError, ValueError):
    exit_code = 2


class ParseError(InvalidInput):
    def __init__(self, message, text=None, position=None):
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message += f": {text!r}"
        super().__init__(message)
        self.text = text
        self.position = position


class DomainError(MetabettiError, ValueError):
    exit_code = 2


class UnsupportedField(MetabettiError, TypeError):
    exit_code = 2


class UnsupportedRank(MetabettiError, ValueError):
    exit_code = 2


class FieldMismatch(MetabettiError, TypeError):
    exit_code = 2


class ResourceLimit(MetabettiError, RuntimeError):
    exit_code = 3


class CrossCheckFailure(MetabettiError, AssertionError):
    """Two independent computations of the same number disagreed."""

    exit_code = 4

    def __init__(self, message, **witnesses):
        if witnesses:
            detail = ", ".join(f"{k}={v!r}" for k, v in witnesses.items())
            message = f"{message} ({detail})"
        super().__init__(message)
        self.witnesses = witnesses
