"""Exception hierarchy.

The CLI maps these onto exit codes: input errors exit 1, resource caps
exit 2, failed certification or verification exits 3.
"""


class StackSortError(Exception):
    """Base class for all errors raised by this package."""


class InputError(StackSortError, ValueError):
    """Malformed input: bad permutation string, hook off the diagram, ..."""


class DomainError(InputError):
    """Argument outside the domain where a formula is defined."""


class TableFormatError(InputError):
    """A count table file is corrupt or has the wrong schema."""

    def __init__(self, message, *, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ResourceCapError(StackSortError, RuntimeError):
    """A brute-force computation was refused because it exceeds its cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap} (raise it with a flag or STACKSORT_CAPS)")
        self.what = what
        self.size = size
        self.cap = cap


class ConfigurationError(StackSortError):
    """An unvalidated configuration was requested in strict mode."""


class NumericError(StackSortError, ArithmeticError):
    """A numeric procedure failed: no sign change, disagreement between routes,
    or a division-bearing formula that should be integral was not."""
