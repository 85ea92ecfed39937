class L2PolyError(Exception):
    """Base class for every error raised by the toolkit."""


class FieldError(L2PolyError):
    pass


class GroupError(L2PolyError):
    """Internal inconsistency while materializing a group (always a bug)."""


class TupleError(L2PolyError):
    pass


class StructureError(L2PolyError):
    pass


class CensusError(L2PolyError):
    pass


class EnumerationError(L2PolyError):
    """Coset table misuse, e.g. reading permutations from a table that never closed."""


class PresentationError(L2PolyError):
    """
    Raised by the presentation parser and builders.
    Syntax errors carry the 1-based line and column of the offending token.
    """

    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
