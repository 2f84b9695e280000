"""Exception types shared across the engine."""


class ChordLinkError(Exception):
    """Base class for all engine errors."""


class GraphError(ChordLinkError):
    """Invalid graph structure (self-loop, duplicate edge, bad weight...)."""


class GmlError(ChordLinkError):
    """GML syntax or referential-integrity error, with source location."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        if line:
            message = f"{message} (line {line}, col {col})"
        super().__init__(message)


class SchemaError(ChordLinkError):
    """Layout document does not match the expected schema/version."""


class SessionError(ChordLinkError):
    """Invalid session command (unknown cluster, node already clustered...)."""


class InternalInvariantError(ChordLinkError):
    """A geometric or combinatorial invariant was violated mid-pipeline."""


class OracleSizeError(ChordLinkError):
    """Brute-force oracle refused an instance above its size bound."""
