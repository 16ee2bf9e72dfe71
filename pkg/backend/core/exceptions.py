"""
Custom Exceptions
=================

Defines application-specific exceptions for consistent error handling.

WHY THIS FILE EXISTS:
- Provides semantic error types for different failure modes
- Lets the CLI map every expected failure to one exit code and diagnostic
- Carries the context (line, field, invariant, vehicle) needed to fix inputs

USAGE:
    from backend.core.exceptions import NetworkValidationError

    raise NetworkValidationError("nonpositive length on road r1", invariant="nonpositive length")

DESIGN DECISIONS:
- All exceptions inherit from a base RerouteError
- Each exception includes relevant context for debugging
- Error codes are stable strings, printed by the CLI
"""

from typing import Optional


class RerouteError(Exception):
    """
    Base exception for all rerouting engine errors.

    Attributes:
        message: Human-readable error description
        error_code: Machine-readable error identifier
    """

    def __init__(self, message: str, error_code: str = "REROUTE_ERROR"):
        self.message = message
        self.error_code = error_code
        super().__init__(self.message)


class NetworkParseError(RerouteError):
    """Raised when a network file cannot be parsed against its schema."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        field: Optional[str] = None,
    ):
        context = []
        if line is not None:
            context.append(f"line {line}")
        if field:
            context.append(f"field '{field}'")
        suffix = f" ({', '.join(context)})" if context else ""
        super().__init__(
            message=f"{message}{suffix}",
            error_code="NETWORK_PARSE_ERROR",
        )
        self.line = line
        self.field = field


class NetworkValidationError(RerouteError):
    """Raised when a parsed network violates a structural invariant."""

    def __init__(self, message: str, invariant: str):
        super().__init__(
            message=message,
            error_code="NETWORK_VALIDATION_ERROR",
        )
        self.invariant = invariant


class PartitionError(RerouteError):
    """Raised when a fog partition is not a valid partition of the roads."""

    def __init__(self, message: str, road: Optional[str] = None):
        super().__init__(
            message=message,
            error_code="PARTITION_ERROR",
        )
        self.road = road


class ScenarioError(RerouteError):
    """Raised when a scenario references unknown roads or unreachable destinations."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(
            message=message,
            error_code="SCENARIO_ERROR",
        )
        self.field = field


class ShapeError(RerouteError):
    """Raised when matrix shapes do not line up in the neural core."""

    def __init__(self, message: str):
        super().__init__(
            message=message,
            error_code="SHAPE_ERROR",
        )


class SimulationConsistencyError(RerouteError):
    """Raised when the simulator detects a broken vehicle invariant."""

    def __init__(self, message: str, vehicle_id: Optional[str] = None):
        super().__init__(
            message=message,
            error_code="SIMULATION_CONSISTENCY_ERROR",
        )
        self.vehicle_id = vehicle_id


class InsufficientReplayError(RerouteError):
    """Raised when training is requested before the buffer holds a batch."""

    def __init__(self, size: int, batch_size: int):
        super().__init__(
            message=f"Replay buffer holds {size} transitions, batch needs {batch_size}",
            error_code="INSUFFICIENT_REPLAY",
        )
        self.size = size
        self.batch_size = batch_size


class CheckpointError(RerouteError):
    """Raised when a checkpoint is unreadable or does not match the architecture."""

    def __init__(self, message: str, path: Optional[str] = None):
        super().__init__(
            message=message,
            error_code="CHECKPOINT_ERROR",
        )
        self.path = path


class ConfigValidationError(RerouteError):
    """Raised when an experiment or scenario configuration is invalid."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(
            message=message,
            error_code="CONFIG_VALIDATION_ERROR",
        )
        self.field = field


class ReportMismatchError(RerouteError):
    """Raised when reports handed to compare() cover different scenario grids."""

    def __init__(self, message: str):
        super().__init__(
            message=message,
            error_code="REPORT_MISMATCH",
        )
