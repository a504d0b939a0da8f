"""
Report Generators
=================

Output formatters for reduction results.

Available Reporters
-------------------
CLIReporter
    Rich terminal output with summary panels and tables.
CSVReporter
    Plot-ready CSV for Hankel values and comparison tables.
JSONReporter
    Model, reduced-model and sample documents with the run configuration.

Example
-------
>>> from src.reporters import CLIReporter, CSVReporter, JSONReporter
>>>
>>> CLIReporter().report_reduction(result)
>>> CSVReporter("hsv.csv").report_hankel_values(result.hankel_values, result.run_config())
>>> JSONReporter("rom.json").report_rom(result.rom, result.run_config())
"""

from src.reporters.cli_reporter import CLIReporter
from src.reporters.csv_reporter import CSVReporter
from src.reporters.json_reporter import JSONReporter

__all__ = [
    "CLIReporter",
    "CSVReporter",
    "JSONReporter",
]
