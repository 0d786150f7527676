"""
Error taxonomy for cdspack.
Input problems subclass ValueError so callers that only expect ValueError keep working.
"""
from typing import Optional


class CDSPackError(Exception):
    """Base class for all cdspack errors"""


class GraphInputError(CDSPackError, ValueError):
    """An argument violates an operation's precondition"""


class NoVertexCutError(GraphInputError):
    """s and t are adjacent (or identical), so no vertex set separates them"""


class NoSeparatorError(CDSPackError):
    """The graph is complete and has no node separator"""


class CompleteGraphError(NoSeparatorError):
    """The packing pipeline was called on a complete graph"""

    def __init__(self, message: Optional[str] = None):
        super().__init__(
            message
            or "Graph is complete: the minimum separator capacity k is undefined. "
            "Use packing.pack_complete to pack each vertex as a singleton CDS."
        )


class InfeasiblePointError(GraphInputError):
    """A fractional point violates one of the LP constraints"""

    def __init__(self, message: str, constraint=None):
        super().__init__(message)
        self.constraint = constraint


class SteinerInfeasibleError(GraphInputError):
    """Terminals lie in different connected components"""


class ResourceLimitError(CDSPackError):
    """An iteration cap or enumeration budget was exceeded"""


class LPError(CDSPackError):
    """An exactness check inside the LP engine failed"""


class InstanceParseError(CDSPackError, ValueError):
    """Malformed instance file"""

    def __init__(self, message: str, line_number: int = 0):
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number else ""
        super().__init__(f"{prefix}{message}")
