"""
Failure models and their factory registry.
"""
from abc import ABC, abstractmethod
from typing import Dict, Mapping, Protocol

from ..common.exceptions import ConfigurationError
from ..common.rng import substream
from .domain import NodeSpec


class FailureModel(Protocol):
    """
    Produces the failure probability f(u,v) of a link.
    """
    def failure(self, a: NodeSpec, b: NodeSpec, distance: float) -> float:
        ...


class ConstantFailure:
    def __init__(self, f: float):
        self.f = f

    def failure(self, a: NodeSpec, b: NodeSpec, distance: float) -> float:
        return self.f


class UniformFailure:
    """Per-link uniform draw in [low, high); one substream per link."""

    def __init__(self, low: float, high: float, seed: int):
        self.low = low
        self.high = high
        self.seed = seed

    def failure(self, a: NodeSpec, b: NodeSpec, distance: float) -> float:
        u, v = sorted((a.id, b.id))
        rng = substream(self.seed, "failure", u, v)
        return float(rng.uniform(self.low, self.high))


class DistanceLinearFailure:
    """
    f grows linearly from f_min at distance 0 to f_max at the shorter of the two ranges.
    """

    def __init__(self, f_min: float, f_max: float):
        self.f_min = f_min
        self.f_max = f_max

    def failure(self, a: NodeSpec, b: NodeSpec, distance: float) -> float:
        reach = min(a.range_m, b.range_m)
        ratio = min(max(distance / reach, 0.0), 1.0)
        return self.f_min + (self.f_max - self.f_min) * ratio


def _probability(params: Mapping[str, float], name: str, default: float) -> float:
    value = float(params.get(name, default))
    if not 0.0 <= value < 1.0:
        raise ConfigurationError(f"Failure parameter '{name}' must lie in [0, 1), got {value}")
    return value


def _reject_unknown(kind: str, params: Mapping[str, float], allowed: set) -> None:
    unknown = set(params) - allowed
    if unknown:
        raise ConfigurationError(f"Unknown parameters for '{kind}' failure model: {sorted(unknown)}")


class FailureModelFactory(ABC):
    """
    Abstract factory for failure models.
    """

    @abstractmethod
    def can_handle(self, kind: str) -> bool:
        pass

    @abstractmethod
    def create(self, params: Mapping[str, float], seed: int) -> FailureModel:
        pass


class ConstantFactory(FailureModelFactory):
    def can_handle(self, kind: str) -> bool:
        return kind == "constant"

    def create(self, params: Mapping[str, float], seed: int) -> FailureModel:
        _reject_unknown("constant", params, {"f"})
        return ConstantFailure(_probability(params, "f", 0.5))


class UniformFactory(FailureModelFactory):
    def can_handle(self, kind: str) -> bool:
        return kind == "uniform"

    def create(self, params: Mapping[str, float], seed: int) -> FailureModel:
        _reject_unknown("uniform", params, {"low", "high"})
        low = _probability(params, "low", 0.1)
        high = _probability(params, "high", 0.9)
        if low > high:
            raise ConfigurationError(f"Uniform failure interval is empty: [{low}, {high})")
        return UniformFailure(low, high, seed)


class DistanceLinearFactory(FailureModelFactory):
    def can_handle(self, kind: str) -> bool:
        return kind == "distance"

    def create(self, params: Mapping[str, float], seed: int) -> FailureModel:
        _reject_unknown("distance", params, {"f_min", "f_max"})
        f_min = _probability(params, "f_min", 0.1)
        f_max = _probability(params, "f_max", 0.7)
        if f_min > f_max:
            raise ConfigurationError(f"f_min ({f_min}) must not exceed f_max ({f_max})")
        return DistanceLinearFailure(f_min, f_max)


class FailureModelRegistry:
    """
    Centralized registry for failure model factories.
    """

    def __init__(self):
        self._factories: Dict[str, FailureModelFactory] = {}

    def register(self, name: str, factory: FailureModelFactory):
        self._factories[name] = factory

    def create(self, kind: str, params: Mapping[str, float], seed: int) -> FailureModel:
        for factory in self._factories.values():
            if factory.can_handle(kind):
                return factory.create(params, seed)
        raise ConfigurationError(f"No failure model registered for kind: {kind}")


_registry = FailureModelRegistry()
_registry.register("constant", ConstantFactory())
_registry.register("uniform", UniformFactory())
_registry.register("distance", DistanceLinearFactory())


def create_failure_model(kind: str, params: Mapping[str, float], seed: int = 0) -> FailureModel:
    """
    Factory function to create a failure model using the registry.
    """
    return _registry.create(kind, dict(params), seed)
