"""
Exception hierarchy for the domain layer.
Commands translate these into exit code 2; domain code never exits or prints.
"""
from typing import Optional


class CycleconfError(Exception):
    """Base class. `reason` is the short machine-readable error name."""

    reason: str = "error"

    def __init__(self, message: str, reason: Optional[str] = None):
        super().__init__(message)
        if reason is not None:
            self.reason = reason


class GraphError(CycleconfError):
    reason = "invalid graph"


class GraphFormatError(GraphError):
    reason = "malformed input"

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position


class FamilyError(CycleconfError):
    reason = "parameter out of range"


class MatchingError(CycleconfError):
    reason = "not matchable"


class TightCutError(CycleconfError):
    reason = "precondition"


class ConformalityError(CycleconfError):
    reason = "not a cycle of the graph"


class PfaffianError(CycleconfError):
    reason = "scale"


class CensusError(CycleconfError):
    reason = "out of bounds"
