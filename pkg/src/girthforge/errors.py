"""Exception types shared across the package."""


class GirthforgeError(Exception):
    """Base class for all package-specific errors."""


class IncompleteMatrixError(GirthforgeError):
    """An operation needing concrete exponents hit a symbolic placeholder."""


class InvalidSpreadError(GirthforgeError):
    """A spreading specification is not a partition of the block code."""


class ConstructionFailure(GirthforgeError):
    """All construction attempts within the budget failed.

    Raising the lifting sizes or lowering the target girth usually helps.
    """

    def __init__(self, message, attempts=None):
        super().__init__(message)
        self.attempts = attempts


class SizeGuardError(GirthforgeError):
    """A brute-force oracle refused an input that exceeds its size guard."""


class FormatError(GirthforgeError):
    """A text artifact could not be parsed.

    Carries the 1-based line number for diagnostics.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
