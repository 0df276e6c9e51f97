"""Exception hierarchy shared by every module."""


class PatternForgeError(ValueError):
    """Base class for all library errors."""


class InvalidWordError(PatternForgeError):
    pass


class InvalidPermutationError(PatternForgeError):
    pass


class InvalidOccurrenceError(PatternForgeError):
    pass


class InvalidDepthError(PatternForgeError):
    pass


class InvalidCandidateError(PatternForgeError):
    pass


class UnsupportedDeviceError(PatternForgeError):
    pass


class UnknownClassError(PatternForgeError):
    pass


class ResourceLimitError(PatternForgeError):
    """Raised when an exhaustive computation would exceed its guard bound."""


class ParseError(PatternForgeError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
