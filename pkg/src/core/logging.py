"""
Logging Configuration Module
============================

Root-logger setup for Loewner-BT.

Numerical kernels log residuals, condition numbers and chosen shifts at
DEBUG level; pipeline milestones (samples assembled, factors computed,
reduced model built) are logged at INFO; lost structural guarantees are
logged as warnings. Python warnings raised by numpy and scipy (for example
``LinAlgWarning`` on an ill-conditioned solve) are routed into the same
handlers.

Functions
---------
setup_logging
    Configure application-wide logging.
level_from_flags
    Map the CLI ``--verbose`` / ``--quiet`` flags to a logging level.
get_logger
    Get a logger for a specific module.

Example
-------
>>> from src.core.logging import setup_logging, get_logger
>>>
>>> setup_logging(level="INFO", log_file="loewner-bt.log")
>>> logger = get_logger(__name__)
>>> logger.info("Assembling Loewner quadruple")

See Also
--------
rich.logging : Rich library's logging handler.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, Optional, Union

from rich.console import Console
from rich.logging import RichHandler

LevelLike = Union[str, int]

CONSOLE_FORMAT = "%(message)s"
FILE_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Per-solve diagnostics; one DEBUG line per equation
KERNEL_LOGGERS = ("src.core.linalg", "src.interpolation.shift", "src.interpolation.pork")


def _to_level(level: LevelLike) -> int:
    if isinstance(level, int):
        return level
    resolved = logging.getLevelName(level.upper())
    return resolved if isinstance(resolved, int) else logging.INFO


def setup_logging(
    level: LevelLike = "INFO",
    log_file: Optional[str] = None,
    rich_tracebacks: bool = True,
    console: Optional[Console] = None,
    kernel_level: Optional[LevelLike] = None,
) -> None:
    """
    Configure application-wide logging.

    Parameters
    ----------
    level : str or int, default="INFO"
        Level of the root logger and both handlers.
    log_file : str, optional
        Also write plain-text records to this file.
    rich_tracebacks : bool, default=True
        Render exception tracebacks with Rich.
    console : Console, optional
        Console of the Rich handler; a stderr console by default, so CSV
        or JSON written to stdout stays clean.
    kernel_level : str or int, optional
        Separate level for the matrix-equation loggers in
        :data:`KERNEL_LOGGERS`; ``"WARNING"`` hides per-solve DEBUG lines
        while keeping DEBUG output of the pipeline.

    Notes
    -----
    Existing root handlers are replaced, so repeated calls (one per CLI
    invocation in tests) do not duplicate output.
    """
    root_level = _to_level(level)
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    root.setLevel(root_level)

    console_handler = RichHandler(
        console=console or Console(stderr=True),
        show_time=True,
        show_path=False,
        rich_tracebacks=rich_tracebacks,
        tracebacks_show_locals=False,
        markup=True,
    )
    console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    handlers = [console_handler]

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt=DATE_FORMAT))
        handlers.append(file_handler)

    for handler in handlers:
        handler.setLevel(root_level)
        root.addHandler(handler)

    logging.captureWarnings(True)
    if kernel_level is not None:
        for name in KERNEL_LOGGERS:
            logging.getLogger(name).setLevel(_to_level(kernel_level))

    root.debug(f"Logging at {logging.getLevelName(root_level)}, file={log_file or 'None'}")


def level_from_flags(verbose: bool, quiet: bool) -> int:
    """``--verbose`` wins over ``--quiet`` when both are given."""
    if verbose:
        return logging.DEBUG
    if quiet:
        return logging.WARNING
    return logging.INFO


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


class LogContext:
    """
    Context manager for temporary log level changes.

    Accepts one logger, or several logger names, and restores every
    original level on exit.

    Parameters
    ----------
    loggers : logging.Logger, str or iterable of those
        Loggers to modify.
    level : str or int
        Temporary log level.

    Example
    -------
    >>> with LogContext(KERNEL_LOGGERS, "WARNING"):
    ...     rows = compare_variants(model, samples, ["bt"], range(1, 21), config)
    """

    def __init__(
        self,
        loggers: Union[logging.Logger, str, Iterable[Union[logging.Logger, str]]],
        level: LevelLike,
    ) -> None:
        if isinstance(loggers, (logging.Logger, str)):
            loggers = [loggers]
        self.loggers = [lg if isinstance(lg, logging.Logger) else logging.getLogger(lg) for lg in loggers]
        self.new_level = _to_level(level)
        self._saved: Dict[str, int] = {}

    def __enter__(self) -> "LogContext":
        for lg in self.loggers:
            self._saved[lg.name] = lg.level
            lg.setLevel(self.new_level)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:  # type: ignore[no-untyped-def]
        for lg in self.loggers:
            lg.setLevel(self._saved.pop(lg.name, logging.NOTSET))
