class DeltaClosureError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(DeltaClosureError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class IntegrityError(DeltaClosureError):
    """A concept family handed to the graph builder is not the complete closed family."""


class ResourceCapError(DeltaClosureError):
    """A configurable resource guard was hit (concept count, candidates, removal budget)."""


class ConceptCapExceeded(ResourceCapError):
    pass


class CandidateCapExceeded(ResourceCapError):
    pass


class BudgetExceeded(ResourceCapError):
    pass


class OracleLimitError(DeltaClosureError):
    pass


class UnleveledError(DeltaClosureError):
    pass
