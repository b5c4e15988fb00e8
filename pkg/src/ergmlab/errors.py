"""Exception hierarchy shared by every ergmlab module."""


class ErgmError(Exception):
    """Base class for all ergmlab errors."""


class InvalidArgument(ErgmError, ValueError):
    """An argument is malformed or out of range."""


class InvalidInput(InvalidArgument):
    """An input graph or model does not meet an operation's precondition."""


class InvalidEmbedding(InvalidArgument):
    """A vertex map is not an induced-subgraph embedding."""


class UnsupportedFeature(InvalidArgument):
    """A model uses a feature the requested engine cannot handle."""


class PreconditionViolated(InvalidArgument):
    pass


class OverflowDigits(InvalidArgument):
    """The value does not fit in the requested number of digits."""


class SizeCapError(ErgmError):
    """An instance exceeds a hard size cap (reported by the CLI as exit 3)."""


class TooLarge(SizeCapError):
    pass


class UnsupportedSize(SizeCapError):
    pass
