import logging
import time
from functools import wraps
from typing import Callable, Dict, Optional, Union

from .exceptions import ConfigurationError

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

_loggers: Dict[str, logging.Logger] = {}
_level: int = logging.INFO


def _as_level(level: Union[int, str]) -> int:
    if isinstance(level, int):
        return level
    value = logging.getLevelName(level.upper())
    if not isinstance(value, int):
        raise ConfigurationError(f"Unknown log level: {level}")
    return value


def setup_logger(name: str, level: Optional[Union[int, str]] = None) -> logging.Logger:
    """
    Returns a stream logger with the project format.

    Loggers created here follow set_log_level unless given an explicit level.
    """
    logger = logging.getLogger(name)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    logger.setLevel(_level if level is None else _as_level(level))
    if level is None:
        _loggers[name] = logger
    return logger


def set_log_level(level: Union[int, str]) -> int:
    """Applies one level to every logger handed out by setup_logger."""
    global _level
    _level = _as_level(level)
    for logger in _loggers.values():
        logger.setLevel(_level)
    return _level


def log_execution_time(logger: logging.Logger, stage: Optional[str] = None, slow_s: float = 0.5):
    """
    Decorator that times a pipeline stage.

    Reports at INFO when the stage takes longer than slow_s, at DEBUG otherwise.
    """
    def decorator(func: Callable):
        label = stage or func.__name__

        @wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger.error(f"{label} failed after {time.perf_counter() - start:.3f}s: {e}")
                raise
            elapsed = time.perf_counter() - start
            if elapsed > slow_s:
                logger.info(f"{label} finished in {elapsed:.3f}s")
            else:
                logger.debug(f"{label} finished in {elapsed:.3f}s")
            return result
        return wrapper
    return decorator
