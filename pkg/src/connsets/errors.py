"""Exception hierarchy shared by every connsets module."""


class ConnsetsError(Exception):
    """Base class for all library errors."""


class GraphFormatError(ConnsetsError, ValueError):
    """Input text does not encode a valid simple graph."""

    def __init__(self, message: str, line: int | None = None):
        self.detail = message
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)

    def at_line(self, line: int) -> "GraphFormatError":
        """Same error, re-attached to ``line``."""
        return type(self)(self.detail, line)


class ByteOutOfRange(GraphFormatError):
    pass


class TruncatedInput(GraphFormatError):
    pass


class TrailingGarbage(GraphFormatError):
    pass


class Malformed(GraphFormatError):
    pass


class DuplicateEdge(GraphFormatError):
    pass


class SelfLoop(GraphFormatError):
    pass


class VertexOutOfRange(GraphFormatError):
    pass


class Disconnected(ConnsetsError):
    """The operation needs a connected graph."""


class BudgetExceeded(ConnsetsError):
    """An exponential computation ran past its configured work budget."""

    def __init__(self, budget: int, what: str = "enumeration"):
        self.budget = budget
        super().__init__(f"{what} exceeded work budget of {budget} nodes")


class EmptyRoot(ConnsetsError, ValueError):
    pass


class RootNotConnected(ConnsetsError, ValueError):
    pass


class NotACutVertex(ConnsetsError, ValueError):
    pass


class InvalidParams(ConnsetsError, ValueError):
    pass


class UnknownStatement(ConnsetsError, KeyError):
    def __str__(self) -> str:
        return f"unknown statement: {self.args[0]!r}"
