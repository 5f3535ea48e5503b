class InteractiveCoverError(Exception):
    """Base class for every error raised by interactive_cover."""


class ParameterError(InteractiveCoverError, ValueError):
    """A generator, objective or statistic got parameters out of range."""


class MalformedPairError(InteractiveCoverError, ValueError):
    """A question-response pair references an unknown query or response."""


class ProtocolError(InteractiveCoverError):
    """A policy or oracle broke the ask/answer protocol of the run loop."""


class NonTerminationError(InteractiveCoverError):
    """The run loop exceeded its step limit."""


class InfeasibleInstanceError(NonTerminationError):
    """No question can make progress although the goal is not reached."""


class InconsistentOracleError(InteractiveCoverError):
    """The oracle's responses eliminated every hypothesis."""


class SizeError(InteractiveCoverError):
    """An instance is too large for a brute-force computation."""


class EdgeListParseError(InteractiveCoverError, ValueError):
    def __init__(self, line_number: int, line: str) -> None:
        super().__init__(
            'line %d: expected two integer node ids, got %r'
            % (line_number, line)
        )
        self.line_number = line_number
        self.line = line


class InstanceFormatError(InteractiveCoverError, ValueError):
    """A JSON document does not describe a valid instance."""
