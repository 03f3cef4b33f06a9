"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class UnsupportedConfiguration(DomainError):
    """A scenario has a geometry that a closed-form routine does not handle."""


class IntegrityError(RuntimeError):
    """Two independent routes disagree; signals a bug in an encoder or solver."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
