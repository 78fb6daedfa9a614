"""
Scenario orchestration and report emission.
"""
from .builder import ScenarioBuilder
from .report import ReportWriter
from .runner import COMMANDS, ReportBundle, error_line, exit_code_for, run_scenario

__all__ = ["ScenarioBuilder", "ReportWriter", "COMMANDS", "ReportBundle", "error_line", "exit_code_for", "run_scenario"]
