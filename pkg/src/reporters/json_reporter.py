"""
JSON Reporter Module
====================

Writes model, reduced-model and sample documents with the resolved run
configuration embedded under ``"run_config"``, so every output file
records how it was produced.

Output Structure
----------------
Reduced model::

    {
      "n": 3, "m": 1, "p": 1, "field": "real",
      "A": [[...]], "B": [[...]], "C": [[...]], "D": [[...]],
      "hankel_values": [...],
      "pipeline": "sampled", "variant": "bt", ...,
      "run_config": {"variant": "bt", "mode": "ddp", "eps": 0.001, ...}
    }

Example
-------
>>> from src.reporters import JSONReporter
>>>
>>> reporter = JSONReporter(output_path="rom.json")
>>> filepath = reporter.report_rom(result.rom, result.run_config())
>>>
>>> # Or get as string
>>> text = reporter.to_string(result.rom.to_dict())

See Also
--------
CSVReporter : For Hankel values and comparison tables.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, Optional

from src.core.fileio import atomic_write_text, dump_json
from src.reduction.model import ReducedModel
from src.sampling.samples import SampleSet, samples_to_dict
from src.sampling.statespace import StateSpace

# Module logger
logger = logging.getLogger(__name__)


class JSONReporter:
    """
    Reporter for JSON documents.

    Parameters
    ----------
    output_path : str, optional
        Path for the output file. Each ``report_*`` method has its own
        default file name.
    indent : int, default=2
        JSON indentation level. Set to None for compact output.
    """

    def __init__(
        self,
        output_path: Optional[str] = None,
        indent: Optional[int] = 2,
    ) -> None:
        self.output_path = output_path
        self.indent = indent
        logger.debug(f"Initialized JSONReporter (output_path={output_path})")

    def _get_output_path(self, default_name: str) -> Path:
        return Path(self.output_path) if self.output_path else Path(default_name)

    def to_string(self, data: Dict[str, Any]) -> str:
        return dump_json(data, indent=self.indent)

    def _write(self, data: Dict[str, Any], run_config: Optional[Dict[str, Any]], default_name: str) -> str:
        if run_config is not None:
            data["run_config"] = run_config
        output_path = self._get_output_path(default_name)
        atomic_write_text(output_path, self.to_string(data))
        logger.info(f"Wrote {output_path}")
        return str(output_path)

    def report_rom(self, rom: ReducedModel, run_config: Optional[Dict[str, Any]] = None) -> str:
        """
        Write a reduced model.

        Returns
        -------
        str
            Path to the created file.
        """
        return self._write(rom.to_dict(), run_config, "rom.json")

    def report_model(self, model: StateSpace, run_config: Optional[Dict[str, Any]] = None) -> str:
        """Write a state-space model."""
        return self._write(model.to_dict(), run_config, "model.json")

    def report_samples(self, samples: SampleSet, run_config: Optional[Dict[str, Any]] = None) -> str:
        """Write a sample set; the sampling settings go under ``metadata``."""
        data = samples_to_dict(samples)
        if run_config is not None:
            data["metadata"] = {**data.get("metadata", {}), "run_config": run_config}
        return self._write(data, None, "samples.json")
