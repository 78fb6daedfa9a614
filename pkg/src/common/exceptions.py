from typing import FrozenSet, Iterable, Optional


class WsnError(Exception):
    """Base exception for all sensor-network routing errors."""
    pass

class ConfigurationError(WsnError, ValueError):
    """Raised when a scenario or model configuration is invalid."""
    pass

class NoForwardersError(WsnError, ValueError):
    """Raised when a metric is evaluated over an empty forwarder list."""
    pass

class ProtocolError(WsnError):
    """Base class for key establishment and sealed-delivery failures."""
    pass

class ChannelError(ProtocolError):
    """Raised when two parties share no pre-distributed key."""
    pass

class IntegrityError(ProtocolError):
    """Raised when an envelope tag does not verify."""
    pass

class ReplayError(IntegrityError):
    """Raised when an envelope carries a stale counter."""
    pass

class MissingGroupKeyError(ProtocolError):
    """Raised when a node is asked to use a group key it does not hold."""
    pass

class UnreachableError(WsnError):
    """Raised when no route exists towards a destination."""

    def __init__(self, message: str, break_point: Optional[int] = None):
        super().__init__(message)
        self.break_point = break_point

class ConvergenceError(WsnError):
    """Raised when the iterative fixpoint hits its round cap."""

    def __init__(self, message: str, oscillating: Iterable[int] = ()):
        super().__init__(message)
        self.oscillating: FrozenSet[int] = frozenset(oscillating)

class UndeliverableError(WsnError):
    """Raised when a hop can never succeed (total failure probability 1)."""

    def __init__(self, message: str, hop_index: int):
        super().__init__(message)
        self.hop_index = hop_index
