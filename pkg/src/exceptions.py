class LaminationError(Exception):
    """Base class for errors raised by the lamination toolkit."""


class ParseError(LaminationError, ValueError):
    """Malformed angle, chord or file text. The message names the bad token."""

    def __init__(self, token: str, reason: str = 'malformed input'):
        self.token = token
        self.reason = reason
        super().__init__(f"{reason}: '{token}'")


class IllegalSeedError(LaminationError):
    """A pullback lamination was requested for a pair that is not legal."""


class PullbackError(LaminationError):
    """No obstacle-avoiding pullback exists, or the choice is ambiguous."""


class GapError(LaminationError):
    """A gap query whose precondition does not hold."""


class InvariantViolation(LaminationError):
    """A structural invariant failed on computed data."""
