import logging

import pytest
from src.common.exceptions import ConfigurationError
from src.common.logging import log_execution_time, set_log_level, setup_logger


@pytest.fixture(autouse=True)
def restore_level():
    yield
    set_log_level(logging.INFO)


def test_set_log_level_reaches_existing_loggers():
    logger = setup_logger("tests.logging.stage")
    assert set_log_level("debug") == logging.DEBUG
    assert logger.level == logging.DEBUG
    assert setup_logger("tests.logging.late").level == logging.DEBUG


def test_explicit_level_is_kept():
    pinned = setup_logger("tests.logging.pinned", level="ERROR")
    set_log_level("DEBUG")
    assert pinned.level == logging.ERROR


def test_unknown_level():
    with pytest.raises(ConfigurationError):
        set_log_level("LOUD")


def test_execution_time_decorator_passes_results_and_errors():
    logger = setup_logger("tests.logging.timed")

    @log_execution_time(logger, stage="square")
    def square(x):
        if x < 0:
            raise ValueError("negative")
        return x * x

    assert square(3) == 9
    assert square.__name__ == "square"
    with pytest.raises(ValueError):
        square(-1)
