"""
Errors
======
Exception hierarchy shared by every module. All errors derive from
ValueError so callers that guard bad inputs with ``except ValueError`` keep
working. ``exit_code`` is the process status the CLI reports for each class.
"""


class ExtropyError(ValueError):
    exit_code = 1


class DomainError(ExtropyError):
    """Argument outside the mathematical domain of the operation."""

    exit_code = 3


class DivergentIntegral(ExtropyError):
    """The integral grows without bound."""

    exit_code = 4


class ToleranceNotReached(ExtropyError):
    """Subdivision budget exhausted before the requested accuracy."""

    exit_code = 4

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class SpecParseError(ExtropyError):
    """A distribution spec, range or table file that does not parse."""

    exit_code = 2

    def __init__(self, message, token=""):
        super().__init__(message)
        self.token = token
