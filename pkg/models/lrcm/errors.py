"""Errors for L-RCM."""


class LRCMError(Exception):
    """Known error that is contemplated in the L-RCM workflows."""


class InputError(LRCMError):
    """The graph or matrix given as input is not valid."""


class ParseError(InputError):
    """A text input could not be parsed."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f'{message} at line {line_no}'
        super().__init__(message)
        self.line_no = line_no


class ContractViolation(LRCMError):
    """A detection precondition was broken, e.g. the input was not RCM-ordered."""


class VerificationError(ContractViolation):
    """An independent oracle disagrees with the L-RCM result."""


class OracleLimitExceeded(LRCMError):
    """The matrix is too large for a dense or brute-force oracle."""


class BenchConfigError(LRCMError):
    """The benchmark configuration cannot be realized."""


class DegenerateFitError(BenchConfigError):
    """The points given to a power-law fit do not determine it."""
