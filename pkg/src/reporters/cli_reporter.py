"""
CLI Reporter Module
===================

Rich terminal output for reductions: a summary panel per run, tables of
Hankel-like values and comparison errors, and warnings when a fast path
gives up a structural guarantee.

Classes
-------
CLIReporter
    Main reporter class for terminal output.

Example
-------
>>> from src.reporters import CLIReporter
>>>
>>> reporter = CLIReporter()
>>> reporter.report_reduction(result)

Notes
-----
The Rich library provides cross-platform terminal output that
degrades gracefully in terminals with limited capabilities.

See Also
--------
rich : Python library for rich text and formatting.
CSVReporter : For data export.
JSONReporter : For model files.
"""

from __future__ import annotations

import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from rich.console import Console
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table
from rich.text import Text

from src.core.base_variant import Variant
from src.reduction.compare import ComparisonRow
from src.reduction.pipeline import ReductionResult

# Module logger
logger = logging.getLogger(__name__)

STRUCTURED = {Variant.PR, Variant.BR, Variant.SW, Variant.BST}


class CLIReporter:
    """
    Reporter for displaying reduction results in the terminal.

    Parameters
    ----------
    console : Console, optional
        Rich Console instance. If not provided, creates a new one.
    max_rows : int, default=20
        Longest Hankel-value table printed; the CSV always has all values.

    Examples
    --------
    >>> from rich.console import Console
    >>> reporter = CLIReporter(console=Console(force_terminal=True))
    >>> reporter.print_hankel_values(values, order=3)
    """

    def __init__(self, console: Optional[Console] = None, max_rows: int = 20) -> None:
        self.console = console or Console()
        self.max_rows = max_rows
        logger.debug("Initialized CLIReporter")

    def create_progress(self) -> Progress:
        """Spinner for long sweeps."""
        return Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=self.console,
            transient=True,
        )

    def report_reduction(self, result: ReductionResult, written: Sequence[str] = ()) -> None:
        """Summary panel, Hankel values and guarantee warnings of one run."""
        config = result.config
        self._print_header(f"{config.variant.value.upper()} reduction", f"mode: {config.mode.value}")
        self._print_summary(self._summary_fields(result))
        self.print_hankel_values(result.hankel_values, result.rom.order)
        if config.fast_path and config.variant in STRUCTURED:
            self.print_warnings(
                [
                    f"Fast path used for {config.variant.value.upper()}: the reduced model "
                    "is not guaranteed to keep the variant's structural property."
                ]
            )
        self.print_written(written)

    def report_comparison(self, rows: Sequence[ComparisonRow], written: Sequence[str] = ()) -> None:
        """Per-order error table."""
        self._print_header("Pipeline comparison", f"{len(rows)} rows")
        table = Table(title="\nRelative H-infinity errors", title_style="bold", show_lines=False)
        table.add_column("Variant", style="cyan", no_wrap=True)
        table.add_column("r", justify="right")
        table.add_column("Intrusive", justify="right")
        table.add_column("Sampled", justify="right")
        table.add_column("QuadBT", justify="right", style="dim")
        table.add_column("HSV diff", justify="right", style="dim")
        for row in rows:
            table.add_row(
                row.variant,
                str(row.order),
                f"{row.intrusive_error:.4e}",
                f"{row.sampled_error:.4e}",
                "-" if row.quadbt_error is None else f"{row.quadbt_error:.4e}",
                f"{row.hsv_difference:.2e}",
            )
        self.console.print(table)
        self.print_written(written)

    def print_hankel_values(self, values: Sequence[float], order: Optional[int] = None) -> None:
        """
        Table of the leading Hankel-like values.

        Rows up to ``order`` are highlighted as kept.
        """
        values = np.asarray(values, dtype=float)
        if values.size == 0:
            self.console.print("\n[yellow]No Hankel values.[/yellow]")
            return
        table = Table(title="\nHankel-like values", title_style="bold", show_lines=False)
        table.add_column("#", style="dim", width=4)
        table.add_column("Value", justify="right")
        table.add_column("Relative", justify="right", style="dim")
        for k, value in enumerate(values[: self.max_rows], 1):
            style = "green" if order is not None and k <= order else "white"
            table.add_row(str(k), f"[{style}]{value:.6e}[/]", f"{value / values[0]:.3e}")
        if values.size > self.max_rows:
            table.caption = f"{values.size - self.max_rows} more in the CSV file"
        self.console.print(table)

    def print_warnings(self, warnings: List[str]) -> None:
        for message in warnings:
            self.console.print(f"[yellow]Warning:[/yellow] {message}")

    def print_written(self, paths: Sequence[str]) -> None:
        for path in paths:
            self.console.print(f"[dim]Wrote {path}[/dim]")

    def print_message(self, message: str, style: str = "green") -> None:
        self.console.print(f"[{style}]{message}[/{style}]")

    # =========================================================================
    # Private Methods: Output Formatting
    # =========================================================================

    def _print_header(self, title: str, subtitle: str) -> None:
        header_text = Text()
        header_text.append(f"\n{title}\n", style="bold blue")
        header_text.append(subtitle, style="dim")
        self.console.print(Panel(header_text, border_style="blue"))

    def _summary_fields(self, result: ReductionResult) -> Dict[str, Any]:
        config = result.config
        fields: Dict[str, Any] = {
            "Order:": result.rom.order,
            "Field:": result.rom.field.value,
            "Route:": result.factors.metadata.get("route", "-"),
            "Fast path:": "yes" if config.fast_path else "no",
        }
        if config.eps is not None:
            fields["Epsilon:"] = f"{config.eps:.4e}"
        if result.epsilon_plan is not None:
            fields["Epsilon bound:"] = result.epsilon_plan.binding
        if config.gamma is not None:
            fields["Gamma:"] = config.gamma
        stable = result.rom.is_stable()
        fields["Stable:"] = "[green]yes[/]" if stable else "[red]no[/]"
        return fields

    def _print_summary(self, fields: Dict[str, Any]) -> None:
        summary = Table(show_header=False, box=None, padding=(0, 2))
        summary.add_column("Metric", style="cyan")
        summary.add_column("Value", style="white")
        for key, value in fields.items():
            summary.add_row(key, str(value))
        self.console.print(summary)
