"""Error hierarchy. Every error carries a category used by the CLI for reporting."""


class QsingError(Exception):
    category = "domain"


class UsageError(QsingError):
    category = "usage"


class ParseError(QsingError):
    category = "parse"

    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        where = f"line {line}, column {column}"
        if self.expected:
            message = f"{message} (expected one of: {', '.join(self.expected)})"
        super().__init__(f"{where}: {message}")


class DomainError(QsingError, ValueError):
    category = "domain"


class RingMismatchError(DomainError):
    pass


class NotPermissibleError(DomainError):
    pass


class UnsupportedFragmentError(QsingError):
    """Raised when an ideal operation falls outside the exact monomial fragment."""

    category = "unsupported-fragment"


class InternalConsistencyError(QsingError, AssertionError):
    category = "internal-consistency"
