"""
CSV Reporter Module
===================

Exports Hankel-like values and comparison tables as plot-ready CSV.

Output Format
-------------
The CSV file includes:

1. Metadata rows (``# key,value``) with the resolved run configuration
2. Empty separator row
3. Column headers
4. Data rows, floats with 17 significant digits

Example output::

    # variant,bt
    # mode,ddp
    # epsilon,0.001

    index,value
    1,1.2345678901234567
    2,0.45678901234567891

Example
-------
>>> from src.reporters import CSVReporter
>>>
>>> reporter = CSVReporter(output_path="hsv.csv")
>>> filepath = reporter.report_hankel_values(result.hankel_values, result.run_config())

See Also
--------
CLIReporter : For terminal display.
JSONReporter : For model files.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from src.core.fileio import atomic_write_text
from src.reduction.compare import ComparisonRow

# Module logger
logger = logging.getLogger(__name__)


class CSVReporter:
    """
    Reporter for exporting numeric results to CSV.

    Parameters
    ----------
    output_path : str, optional
        Path for the output file. Defaults to ``hsv.csv`` or
        ``compare.csv`` in the current directory.
    float_digits : int, default=17
        Significant digits of floats (17 round-trips every double).

    Examples
    --------
    >>> reporter = CSVReporter(output_path="out/compare.csv")
    >>> reporter.report_comparison(rows, {"model": "m.json"})
    'out/compare.csv'
    """

    HSV_COLUMNS = ["index", "value"]
    COMPARE_COLUMNS = [
        "variant",
        "order",
        "intrusive_error",
        "sampled_error",
        "quadbt_error",
        "hsv_difference",
    ]

    def __init__(self, output_path: Optional[str] = None, float_digits: int = 17) -> None:
        self.output_path = output_path
        self.float_digits = float_digits
        logger.debug(f"Initialized CSVReporter (output_path={output_path})")

    def _get_output_path(self, default_name: str) -> Path:
        return Path(self.output_path) if self.output_path else Path(default_name)

    def format_value(self, value: Any) -> str:
        """Render one cell: floats at full precision, None as empty."""
        if value is None:
            return ""
        if isinstance(value, (bool, np.bool_)):
            return str(bool(value))
        if isinstance(value, (float, np.floating)):
            return f"{float(value):.{self.float_digits}g}"
        if isinstance(value, (dict, list)):
            return json.dumps(value, sort_keys=True)
        return str(value)

    def render(
        self,
        columns: Sequence[str],
        rows: Sequence[Sequence[Any]],
        metadata: Optional[Dict[str, Any]] = None,
    ) -> str:
        """
        CSV text of a table.

        Metadata keys are written in sorted order so the same run always
        gives the same bytes.
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
        if metadata:
            for key in sorted(metadata):
                writer.writerow([f"# {key}", self.format_value(metadata[key])])
            writer.writerow([])
        writer.writerow(list(columns))
        for row in rows:
            writer.writerow([self.format_value(v) for v in row])
        return buffer.getvalue()

    def write_table(
        self,
        columns: Sequence[str],
        rows: Sequence[Sequence[Any]],
        metadata: Optional[Dict[str, Any]] = None,
        default_name: str = "table.csv",
    ) -> str:
        output_path = self._get_output_path(default_name)
        logger.info(f"Exporting {len(rows)} rows to {output_path}")
        atomic_write_text(output_path, self.render(columns, rows, metadata))
        return str(output_path)

    def report_hankel_values(
        self,
        values: Sequence[float],
        metadata: Optional[Dict[str, Any]] = None,
    ) -> str:
        """
        Write ``index,value`` rows (1-based index).

        Returns
        -------
        str
            Path to the created CSV file.
        """
        rows: List[List[Any]] = [[k, float(v)] for k, v in enumerate(np.asarray(values, dtype=float), 1)]
        return self.write_table(self.HSV_COLUMNS, rows, metadata, "hsv.csv")

    def report_comparison(
        self,
        rows: Sequence[ComparisonRow],
        metadata: Optional[Dict[str, Any]] = None,
    ) -> str:
        """Write the per-order error table; the QuadBT column is empty where it does not apply."""
        table = [[getattr(row, c) for c in self.COMPARE_COLUMNS] for row in rows]
        return self.write_table(self.COMPARE_COLUMNS, table, metadata, "compare.csv")
