class GraphError(Exception):
    """Base error of the graph and BFS core."""


class InvalidParameterError(GraphError, ValueError):
    """Generator or configuration parameter out of its domain."""


class GraphInputError(GraphError, ValueError):
    """Edge list violates the graph invariants (duplicate edge, self-loop)."""


class GraphFormatError(GraphError):
    """Edge-list file cannot be parsed."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class InvalidVertexError(GraphError, ValueError):
    """Vertex id out of range or not owned by the given rank."""


class InvalidRankError(GraphError, ValueError):
    """Rank id out of range."""


class CorrectnessViolationError(GraphError):
    """Distributed BFS result disagrees with the serial oracle."""
