"""
Domain entities for the Monte Carlo harness.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Sequence, Tuple, Union

from ..common.rng import Label


class Semantics(str, Enum):
    BROADCAST = "broadcast_group_key"
    PAIRWISE = "pairwise_per_link"


@dataclass(frozen=True)
class TrialConfig:
    """
    n forwarders with failure probability f (scalar, or one value per forwarder).

    labels namespaces the random substream so that different table cells draw independently.
    """
    n: int
    f: Union[float, Tuple[float, ...]]
    semantics: Semantics = Semantics.BROADCAST
    trials: int = 100_000
    seed: int = 1
    labels: Tuple[Label, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"Forwarder count must be >= 1, got {self.n}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        object.__setattr__(self, "semantics", Semantics(self.semantics))
        if isinstance(self.f, (list, tuple)):
            object.__setattr__(self, "f", tuple(float(x) for x in self.f))
            if len(self.f) != self.n:
                raise ValueError(f"Expected {self.n} failure probabilities, got {len(self.f)}")
        for x in self.failures:
            if not 0.0 <= x < 1.0:
                raise ValueError(f"Failure probability must lie in [0, 1), got {x}")

    @property
    def failures(self) -> Tuple[float, ...]:
        if isinstance(self.f, tuple):
            return self.f
        return (float(self.f),) * self.n


@dataclass
class TrialResult:
    mean_rounds: float
    stderr: float
    histogram: Dict[int, int]
    trials: int
    analytic: float

    def __post_init__(self) -> None:
        if sum(self.histogram.values()) != self.trials:
            raise ValueError("Histogram total must equal the trial count")

    def within(self, sigmas: float = 3.0) -> bool:
        """Empirical mean within the given number of standard errors of the analytic value."""
        if self.stderr == 0.0:
            return abs(self.mean_rounds - self.analytic) <= 1e-12 * max(1.0, self.analytic)
        return abs(self.mean_rounds - self.analytic) <= sigmas * self.stderr


@dataclass
class RouteDeliveryResult:
    hops: List[TrialResult]
    end_to_end: TrialResult
    failures: List[Tuple[float, ...]] = field(default_factory=list)

    @property
    def analytic(self) -> float:
        return self.end_to_end.analytic
