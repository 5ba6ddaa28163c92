"""Exception hierarchy shared by every contentlab module."""


class ContentLabError(Exception):
    """Base class for all library errors."""


class GroupMismatch(ContentLabError):
    pass


class MalformedDescriptor(ContentLabError):
    pass


class UnsupportedGroup(ContentLabError):
    pass


class RingMismatch(ContentLabError):
    pass


class WrongRingKind(ContentLabError):
    pass


class UnsupportedRing(ContentLabError):
    pass


class UnsupportedOp(ContentLabError):
    pass


class NotPrime(ContentLabError):
    pass


class WitnessError(ContentLabError):
    """An input precondition failed and we can say exactly why."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotPrimeInput(WitnessError):
    pass


class NotPrimaryInput(WitnessError):
    pass


class PrecondViolated(ContentLabError):
    pass


class MalformedTower(ContentLabError):
    pass


class UnknownDemo(ContentLabError):
    pass


class ConfigError(ContentLabError):
    pass


class ExprSyntaxError(ContentLabError):
    """Parse failure with a 1-based line/column and the tokens we would have accepted."""

    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f"{line}:{column}: {message}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class ElaborationError(ContentLabError):
    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")
